import numpy as np
import torch

a = np.ones((2, 2))
b = np.ones((2, 2))
c = np.dot(a, b)  # expect: matmul-api-misused
