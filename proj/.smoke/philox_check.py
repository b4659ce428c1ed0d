M = (1 << 64) - 1
M0 = 0xD2E7470EE14C6C93
M1 = 0xCA5A826395121157
W0 = 0x9E3779B97F4A7C15
W1 = 0xBB67AE8584CAA73B

def mulhilo(a, b):
    p = a * b
    return (p >> 64) & M, p & M

def rnd(c, k):
    hi0, lo0 = mulhilo(M0, c[0])
    hi1, lo1 = mulhilo(M1, c[2])
    return [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0]

def philox4x64_10(c, k):
    c = list(c); k = list(k)
    for i in range(10):
        c = rnd(c, k)
        k = [(k[0] + W0) & M, (k[1] + W1) & M]
    return c

for key, ctr, want in [
    ((0,0),(0,0,0,0), [0x2f4ba6408e4d89b, 0x3dd62b0b9ca8c5b2, 0x1c8667a55d902e79, 0x907d7a052fd5b4dc]),
    ((0xdeadbeef,0xcafef00d),(1,2,3,4), [0xbe50cc8d71b94ed3, 0x24145edfdabb5069, 0x2dc42591c5253a4b, 0x925d19fbe559e7a9]),
    ((M,M),(M,M,M,M), [0x44b7493d1acfc229, 0x6636af8e997921dd, 0x3f73e132b5b3780e, 0x605644dde03b01b1]),
]:
    got = philox4x64_10(ctr, key)
    print([hex(g) for g in got], "MATCH" if got == want else "MISMATCH")
