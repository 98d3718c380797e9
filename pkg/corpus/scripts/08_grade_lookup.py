grades = {"math": 90, "art": 85}
print(grades["class"])
