def setup():
    print("ready")

handler = setup()
handler()
