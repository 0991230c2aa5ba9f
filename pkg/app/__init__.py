# Pectoral - command-line entry point
