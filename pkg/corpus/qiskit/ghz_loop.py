n = 4
qr = QuantumRegister(4)
cr = ClassicalRegister(4)
ghz = QuantumCircuit(qr, cr)
ghz.h(qr[0])
for k in range(3):
    ghz.cx(qr[k], qr[k + 1])
ghz.barrier()
ghz.measure(qr, cr)
print(ghz)
