import pandas as pd


def prepare(frame):
    df = pd.concat([frame, frame])
    df["notes"] = ''  # expect: empty-column-misinit
    return df
