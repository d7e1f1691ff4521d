import pandas as pd

df = pd.read_csv("a.csv", dtype=float)
arr = df.to_numpy()
