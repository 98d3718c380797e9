import chartplotterlib

chartplotterlib.draw([1, 2, 3])
