scores = {"alice": 3}
total = scores + 2
print(total)
