import pandas as pd

d = {"a": 1}
v = d.values()
w = params.values
