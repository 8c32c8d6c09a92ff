qr = QuantumRegister(3)
cr = ClassicalRegister(3)
qc = QuantumCircuit(qr, cr)

def prepare(circuit, reg):
    circuit.h(reg[0])
    circuit.cx(reg[0], reg[1])

def finish(circuit, reg, out):
    circuit.measure(reg, out)

prepare(qc, qr)
qc.ccx(qr[0], qr[1], qr[2])
finish(qc, qr, cr)
