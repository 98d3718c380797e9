from math import cosine

for step in range(4):
    print(step, cosine(step / 4.0))
