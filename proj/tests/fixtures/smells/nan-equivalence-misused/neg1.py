import numpy as np
import pandas as pd

df = pd.read_csv("a.csv", dtype=float)
mask = df["x"].isna()
same = np.isnan(df["y"])
