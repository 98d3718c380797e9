items = [1, 2, 3]
items = items + "four"
print(items)
