import torch
from torch import nn


class Net(nn.Module):
    pass


trial = 0
while trial < 5:  # expect: memory-not-freed
    net = Net()
    trial += 1
