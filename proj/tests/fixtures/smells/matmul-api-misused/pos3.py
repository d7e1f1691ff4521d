import numpy
import pandas as pd

y = numpy.dot(x, w.T)  # expect: matmul-api-misused
