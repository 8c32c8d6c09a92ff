q = QuantumRegister(1)
c = ClassicalRegister(1)
circ = QuantumCircuit(q, c)
flip = True
if flip:
    circ.x(q[0])
circ.measure(q[0], c[0])
