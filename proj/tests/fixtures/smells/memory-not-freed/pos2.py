import torch.nn as nn


def search(sizes):
    for size in sizes:  # expect: memory-not-freed
        layer = nn.Linear(size, size)
        evaluate(layer)
