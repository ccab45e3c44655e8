# Tests for hadamard-radii
