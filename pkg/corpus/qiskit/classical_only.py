total = 0
limit = 10
for i in range(limit):
    total = total + i * 2
if total > 50:
    print(total / limit)
print(total)
