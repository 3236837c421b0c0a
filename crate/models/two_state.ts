# Nondeterministic two-state system: 1 -> {1, 2}, 2 -> {1}.
ts two_state
states 2
L = [1 1
     1 0]
