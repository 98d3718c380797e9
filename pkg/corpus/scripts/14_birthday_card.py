age = 21
print("Age: " + age)
