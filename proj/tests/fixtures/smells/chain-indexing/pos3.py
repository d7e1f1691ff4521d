import pandas as pd


def pick(path):
    frame = pd.read_json(path)
    return frame.loc[0]["col"]  # expect: chain-indexing
