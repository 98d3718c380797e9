tuple = [4, 5, 6]
numbers = tuple(range(3))
print(numbers)
