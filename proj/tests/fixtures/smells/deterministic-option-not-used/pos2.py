import torch  # expect: deterministic-option-not-used

loss = model(x)
loss.backward()
