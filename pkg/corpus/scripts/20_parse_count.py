count = int("12a")
print(count)
