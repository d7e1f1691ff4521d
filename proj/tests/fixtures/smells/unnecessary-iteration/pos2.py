import pandas as pd

frame = pd.DataFrame({"a": [1, 2]})
clean = frame.dropna()
for row in clean.itertuples():  # expect: unnecessary-iteration
    print(row.a)
