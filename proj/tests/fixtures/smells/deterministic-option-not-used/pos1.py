import torch  # expect: deterministic-option-not-used

for batch in loader:
    opt.zero_grad()
    loss = model(batch)
    loss.backward()
