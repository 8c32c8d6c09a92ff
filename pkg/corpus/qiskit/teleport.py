q = QuantumRegister(3)
c0 = ClassicalRegister(1)
c1 = ClassicalRegister(1)
qc = QuantumCircuit(q, c0, c1)
qc.u(0.3, 0.2, 0.1, q[0])
qc.h(q[1])
qc.cx(q[1], q[2])
qc.barrier()
qc.cx(q[0], q[1])
qc.h(q[0])
qc.measure(q[0], c0[0])
qc.measure(q[1], c1[0])
qc.z(q[2])
qc.x(q[2])
