import pandas as pd
from numpy import dot


def project(x, w):
    return dot(x, w)  # expect: matmul-api-misused
