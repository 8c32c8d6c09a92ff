qr = QuantumRegister(3)
cr = ClassicalRegister(3)
circuit = QuantumCircuit(qr, cr)
for layer in range(2):
    for j in range(3):
        circuit.ry(0.1 * layer, qr[j])
    if layer > 0:
        circuit.cz(qr[0], qr[2])
circuit.measure(qr, cr)
