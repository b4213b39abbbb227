# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for finite wreath products.

Mirrors _purekernel.FiniteWreathKernel: the same packed-id layout
(id = f_code * |B| + b_index, f_code little-endian base |A|) and the
same method surface, so results are interchangeable with the pure
backend.
"""

from libc.stdlib cimport free, malloc


cdef long long _prod(tuple orders):
    cdef long long n = 1
    for m in orders:
        n *= m
    return n


cdef class FiniteWreathKernel:
    cdef public tuple a_orders
    cdef public tuple b_orders
    cdef public long long na
    cdef public long long nb
    cdef public long long order
    cdef int *add_a
    cdef int *neg_a
    cdef int *sub_b
    cdef int *fdig
    cdef int *hdig

    def __cinit__(self, a_orders, b_orders):
        self.a_orders = tuple(int(x) for x in a_orders)
        self.b_orders = tuple(int(x) for x in b_orders)
        cdef object big_na = 1
        cdef object big_order
        for m in self.a_orders:
            big_na *= m
        big_order = big_na ** _prod(self.b_orders) * _prod(self.b_orders)
        if big_na >= 1 << 31 or big_order >= 1 << 62:
            raise ValueError("group too large for the compiled kernel")
        self.na = _prod(self.a_orders)
        self.nb = _prod(self.b_orders)
        self.order = big_order
        self.add_a = NULL
        self.neg_a = NULL
        self.sub_b = NULL
        self.fdig = NULL
        self.hdig = NULL
        self._build_tables()
        self.fdig = <int *> malloc(self.nb * sizeof(int))
        self.hdig = <int *> malloc(self.nb * sizeof(int))
        if self.fdig is NULL or self.hdig is NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.add_a)
        free(self.neg_a)
        free(self.sub_b)
        free(self.fdig)
        free(self.hdig)

    cdef _build_tables(self):
        cdef long long na = self.na, nb = self.nb
        cdef long long i, j
        coords_a = self._coords(self.a_orders, na)
        coords_b = self._coords(self.b_orders, nb)
        self.add_a = <int *> malloc(na * na * sizeof(int))
        self.neg_a = <int *> malloc(na * sizeof(int))
        self.sub_b = <int *> malloc(nb * nb * sizeof(int))
        if self.add_a is NULL or self.neg_a is NULL or self.sub_b is NULL:
            raise MemoryError()
        for i in range(na):
            for j in range(na):
                self.add_a[i * na + j] = self._pack(
                    coords_a[i], coords_a[j], 1, self.a_orders
                )
            self.neg_a[i] = self._pack(coords_a[i], coords_a[i], -2, self.a_orders)
        neg_b = [self._pack(coords_b[i], coords_b[i], -2, self.b_orders) for i in range(nb)]
        for i in range(nb):
            for j in range(nb):
                self.sub_b[i * nb + j] = self._pack(
                    coords_b[i], coords_b[neg_b[j]], 1, self.b_orders
                )

    cdef list _coords(self, tuple orders, long long n):
        cdef long long i, rest
        out = []
        for i in range(n):
            rest = i
            c = []
            for m in orders:
                c.append(rest % m)
                rest //= m
            out.append(c)
        return out

    cdef int _pack(self, list u, list v, int sign, tuple orders):
        # sign 1: u + v; sign -2: negation of u (v ignored)
        cdef long long idx = 0, mul = 1
        cdef int pos = 0
        for m in orders:
            if sign == 1:
                idx += ((u[pos] + v[pos]) % m) * mul
            else:
                idx += ((m - u[pos]) % m) * mul
            mul *= m
            pos += 1
        return <int> idx

    cdef long long _conj(self, long long gid, long long zid):
        cdef long long nb = self.nb, na = self.na
        cdef long long fcode = gid // nb, hcode = zid // nb
        cdef long long b = gid % nb, c = zid % nb
        cdef long long x, out = 0, mul = 1
        cdef int val
        cdef int *row
        for x in range(nb):
            self.fdig[x] = <int> (fcode % na)
            fcode //= na
            self.hdig[x] = <int> (hcode % na)
            hcode //= na
        for x in range(nb):
            row = self.sub_b + x * nb
            val = self.add_a[
                self.hdig[x] * na
                + self.add_a[
                    self.fdig[row[c]] * na + self.neg_a[self.hdig[row[b]]]
                ]
            ]
            out += val * mul
            mul *= na
        return out * nb + b

    def conjugate(self, gid, zid):
        """Packed id of z g z^{-1}."""
        return self._conj(gid, zid)

    def find_conjugator(self, g1, g2):
        cdef long long a = g1, b = g2, zid
        if a % self.nb != b % self.nb:
            return None
        for zid in range(self.order):
            if self._conj(a, zid) == b:
                return zid
        return None

    def conjugacy_class_table(self):
        """class representative (least member id) for every element id."""
        cdef long long n = self.order
        cdef long long g, z, h
        cdef long long *table = <long long *> malloc(n * sizeof(long long))
        if table is NULL:
            raise MemoryError()
        try:
            for g in range(n):
                table[g] = -1
            for g in range(n):
                if table[g] >= 0:
                    continue
                table[g] = g
                for z in range(n):
                    h = self._conj(g, z)
                    if table[h] < 0:
                        table[h] = g
            return [table[g] for g in range(n)]
        finally:
            free(table)
