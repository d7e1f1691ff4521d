import pandas as pd

df = pd.read_csv("a.csv", dtype=str)
value = df["a"]["b"]  # expect: chain-indexing
