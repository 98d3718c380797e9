colors = ["red", "green", "blue"]
print(colors[3])
