import pandas as pd

df = pd.read_csv("a.csv")  # expect: columns-dtype-not-set
