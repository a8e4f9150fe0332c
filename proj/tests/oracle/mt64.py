"""64-bit Mersenne Twister per the C++ standard's mt19937_64 parameters,
plus a replica of the library's documented draw disciplines (uniform01,
uniform_index, permutation, splitmix64 seed derivation).

Used by the gen_*_constants.py scripts to freeze expected values into the
C++ tests. Kept independent of the C++ sources on purpose.
"""

MASK64 = (1 << 64) - 1


class MT19937_64:
    N, M, R = 312, 156, 31
    A = 0xB5026F5AA96619E9
    U, D = 29, 0x5555555555555555
    S, B = 17, 0x71D67FFFEDA60000
    T, C = 37, 0xFFF7EEE000000000
    L = 43
    F = 6364136223846793005

    def __init__(self, seed):
        self.state = [0] * self.N
        self.state[0] = seed & MASK64
        for i in range(1, self.N):
            prev = self.state[i - 1]
            self.state[i] = (self.F * (prev ^ (prev >> 62)) + i) & MASK64
        self.index = self.N

    def _twist(self):
        lower_mask = (1 << self.R) - 1
        upper_mask = MASK64 & ~lower_mask
        for i in range(self.N):
            x = (self.state[i] & upper_mask) | (self.state[(i + 1) % self.N] & lower_mask)
            xa = x >> 1
            if x & 1:
                xa ^= self.A
            self.state[i] = self.state[(i + self.M) % self.N] ^ xa
        self.index = 0

    def next(self):
        if self.index >= self.N:
            self._twist()
        y = self.state[self.index]
        self.index += 1
        y ^= (y >> self.U) & self.D
        y ^= (y << self.S) & self.B & MASK64
        y ^= (y << self.T) & self.C & MASK64
        y ^= y >> self.L
        return y & MASK64


class Stream:
    """Replica of the run stream contract: 53-bit uniform01, rejection-sampled
    uniform_index, downward Fisher-Yates permutation."""

    def __init__(self, seed):
        self.engine = MT19937_64(seed)

    def uniform01(self):
        return (self.engine.next() >> 11) * (2.0 ** -53)

    def uniform_index(self, n):
        reject_below = ((1 << 64) % n) & MASK64
        draw = self.engine.next()
        while draw < reject_below:
            draw = self.engine.next()
        return draw % n

    def permutation(self, n):
        order = list(range(n))
        for i in range(n, 1, -1):
            j = self.uniform_index(i)
            order[i - 1], order[j] = order[j], order[i - 1]
        return order


def mix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_run_seed(listed_seed, sweep_index, seed_index):
    s = mix64(listed_seed)
    s = mix64(s ^ ((0x9E3779B97F4A7C15 + sweep_index) & MASK64))
    s = mix64(s ^ ((0xBF58476D1CE4E5B9 + seed_index) & MASK64))
    return s
