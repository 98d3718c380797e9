def bump():
    global tally
    tally = tally + 1

bump()
print(tally)
