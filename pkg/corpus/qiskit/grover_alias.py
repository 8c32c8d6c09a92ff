base = QuantumCircuit(2)
grover = base
grover.h(0)
grover.h(1)
grover.cz(0, 1)
grover.h([0, 1])
grover.x([0, 1])
grover.cz(0, 1)
grover.x([0, 1])
grover.h([0, 1])
grover.measure_all()
