import numpy as np
import pandas as pd

nan = float("nan")
is_big = np.nan > 3
other = value == nan
