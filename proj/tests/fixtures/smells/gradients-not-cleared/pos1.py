import torch

torch.use_deterministic_algorithms(True)

for batch in loader:
    loss = model(batch)
    loss.backward()  # expect: gradients-not-cleared
    optimizer.step()
