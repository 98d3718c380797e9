cookies = 7
kids = 0
share = cookies // kids
print(share)
