import pandas as pd


def as_matrix(d):
    return pd.DataFrame(d).values  # expect: dataframe-conversion-misused
