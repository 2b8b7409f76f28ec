# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled radio kernels (hot backend).

Reference semantics live in ``femtosim.kernels._pure``; the two backends
must stay bit-identical, so expressions and their evaluation order mirror
the pure module exactly and the extension is built with -ffp-contract=off.
"""

from libc.math cimport log10, sqrt
from libc.stdlib cimport free, malloc

BACKEND = "native"

# Per-wall record layout (7 doubles): ax, ay, bx, by, dx, dy, attenuation.
cdef int WREC = 7
# Per-fap record layout (3 doubles): x, y, tx_power.
cdef int FREC = 3


cdef class RadioKernel:
    """Wall-aware path-loss evaluator bound to one floor plan.

    Same constructor and methods as the pure backend; see
    ``femtosim.kernels._pure.RadioKernel`` for the documented contract.
    """

    cdef double* _w
    cdef double* _f
    cdef Py_ssize_t _n_walls
    cdef Py_ssize_t _n_faps
    cdef double _ref_loss
    cdef double _loss_coef
    cdef double _min_distance

    def __cinit__(self, walls, ref_loss, exponent, min_distance, faps=()):
        cdef list wall_rows = [
            (float(w[0]), float(w[1]), float(w[2]), float(w[3]), float(w[4]))
            for w in walls
        ]
        cdef list fap_rows = [(float(f[0]), float(f[1]), float(f[2])) for f in faps]
        cdef Py_ssize_t k
        self._n_walls = len(wall_rows)
        self._n_faps = len(fap_rows)
        self._ref_loss = float(ref_loss)
        self._loss_coef = 10.0 * float(exponent)
        self._min_distance = float(min_distance)
        self._w = NULL
        self._f = NULL
        if self._n_walls:
            self._w = <double*> malloc(self._n_walls * WREC * sizeof(double))
            if self._w == NULL:
                raise MemoryError()
            for k in range(self._n_walls):
                ax, ay, bx, by, att = wall_rows[k]
                self._w[k * WREC + 0] = ax
                self._w[k * WREC + 1] = ay
                self._w[k * WREC + 2] = bx
                self._w[k * WREC + 3] = by
                self._w[k * WREC + 4] = bx - ax
                self._w[k * WREC + 5] = by - ay
                self._w[k * WREC + 6] = att
        if self._n_faps:
            self._f = <double*> malloc(self._n_faps * FREC * sizeof(double))
            if self._f == NULL:
                raise MemoryError()
            for k in range(self._n_faps):
                x, y, tx = fap_rows[k]
                self._f[k * FREC + 0] = x
                self._f[k * FREC + 1] = y
                self._f[k * FREC + 2] = tx

    def __dealloc__(self):
        if self._w != NULL:
            free(self._w)
        if self._f != NULL:
            free(self._f)

    @property
    def n_faps(self):
        return self._n_faps

    cdef double _loss(self, double ax, double ay, double bx, double by) nogil:
        cdef double px, py, qx, qy, t
        cdef double pdx, pdy, dist, loss
        cdef double wax, way, wbx, wby, wdx, wdy
        cdef double d1, d2, e1, e2
        cdef Py_ssize_t k
        cdef double* w
        px = ax
        py = ay
        qx = bx
        qy = by
        if qx < px or (qx == px and qy < py):
            t = px; px = qx; qx = t
            t = py; py = qy; qy = t
        pdx = qx - px
        pdy = qy - py
        dist = sqrt(pdx * pdx + pdy * pdy)
        if dist < self._min_distance:
            dist = self._min_distance
        loss = self._ref_loss + self._loss_coef * log10(dist)
        for k in range(self._n_walls):
            w = self._w + k * WREC
            wax = w[0]; way = w[1]; wbx = w[2]; wby = w[3]
            wdx = w[4]; wdy = w[5]
            d1 = wdx * (py - way) - wdy * (px - wax)
            d2 = wdx * (qy - way) - wdy * (qx - wax)
            if (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0):
                e1 = pdx * (way - py) - pdy * (wax - px)
                e2 = pdx * (wby - py) - pdy * (wbx - px)
                if (e1 >= 0.0 and e2 <= 0.0) or (e1 <= 0.0 and e2 >= 0.0):
                    loss += w[6]
        return loss

    def crossing_indices(self, double ax, double ay, double bx, double by):
        """Indices of walls properly crossed by the open segment (a, b)."""
        cdef double px, py, qx, qy, t
        cdef double pdx, pdy
        cdef double wax, way, wbx, wby, wdx, wdy
        cdef double d1, d2, e1, e2
        cdef Py_ssize_t k
        cdef double* w
        cdef list out = []
        px = ax
        py = ay
        qx = bx
        qy = by
        if qx < px or (qx == px and qy < py):
            t = px; px = qx; qx = t
            t = py; py = qy; qy = t
        pdx = qx - px
        pdy = qy - py
        for k in range(self._n_walls):
            w = self._w + k * WREC
            wax = w[0]; way = w[1]; wbx = w[2]; wby = w[3]
            wdx = w[4]; wdy = w[5]
            d1 = wdx * (py - way) - wdy * (px - wax)
            d2 = wdx * (qy - way) - wdy * (qx - wax)
            if (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0):
                e1 = pdx * (way - py) - pdy * (wax - px)
                e2 = pdx * (wby - py) - pdy * (wbx - px)
                if (e1 >= 0.0 and e2 <= 0.0) or (e1 <= 0.0 and e2 >= 0.0):
                    out.append(k)
        return out

    def path_loss(self, double ax, double ay, double bx, double by):
        """Log-distance loss in dB plus the attenuation of crossed walls."""
        return self._loss(ax, ay, bx, by)

    def rssi_all(self, double mx, double my):
        """RSSI in dBm from every configured source at point (mx, my)."""
        cdef list out = []
        cdef Py_ssize_t i
        cdef double* f
        for i in range(self._n_faps):
            f = self._f + i * FREC
            out.append(f[2] - self._loss(f[0], f[1], mx, my))
        return out
