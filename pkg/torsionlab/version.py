# Define the torsionlab version as a tuple and a string
VERSION = (0, 1, 0)
__version__ = ".".join(str(c) for c in VERSION)
