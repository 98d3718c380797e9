move = "rock"
if move == "paper":
    print("paper wraps rock")
else if move == "rock":
    print("rock blunts scissors")
