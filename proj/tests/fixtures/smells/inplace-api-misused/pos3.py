import pandas as pd


def tidy(path):
    frame = pd.read_json(path)
    frame.sort_values("a")  # expect: inplace-api-misused
    return frame
