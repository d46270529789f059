import logging

# Create the torsionlab logger instance
log = logging.getLogger("torsionlab")
log.addHandler(logging.NullHandler())
