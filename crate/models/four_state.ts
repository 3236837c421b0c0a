# State 4 is absorbing; states 1, 2, 3 form the cycles (1 3) and (1 2 3).
ts four_state
states 4
L = [0 0 1 0
     1 0 0 0
     1 1 0 0
     0 0 1 1]
