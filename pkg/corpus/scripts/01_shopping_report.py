import math

radius = 5.0
area = math.pi * radius ** 2
report = "Area: " + str(area)
print(report.append("!"))
