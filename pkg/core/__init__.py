# Birkhoff slicing core module
