import numpy as np
from numpy.random import Philox

for key, ctr in [((0,0),(0,0,0,0)),
                 ((0xdeadbeef, 0xcafef00d),(1,2,3,4)),
                 ((0xffffffffffffffff,)*2, (0xffffffffffffffff,)*4)]:
    p = Philox(counter=ctr, key=key)
    out = p.random_raw(4)
    print("key", [hex(k) for k in key], "ctr", [hex(c) for c in ctr])
    print("  out:", [hex(int(o)) for o in out])
