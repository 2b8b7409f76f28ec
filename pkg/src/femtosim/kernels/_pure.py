"""Pure-Python radio kernels (fallback backend).

This module is the reference semantics for ``femtosim.kernels._native``.
The two backends must return bit-identical floats, so every arithmetic
expression here is written in the exact evaluation order the C code uses.
Do not "simplify" the float math in one backend only.
"""

from math import log10, sqrt

BACKEND = "pure"


def _canonical(ax: float, ay: float, bx: float, by: float):
    # Fixed endpoint order makes path_loss(a, b) == path_loss(b, a) exact.
    if bx < ax or (bx == ax and by < ay):
        return bx, by, ax, ay
    return ax, ay, bx, by


class RadioKernel:
    """Wall-aware path-loss evaluator bound to one floor plan.

    Parameters
    ----------
    walls : iterable of (ax, ay, bx, by, attenuation_db)
        Attenuating segments; the open path (p, q) accumulates the
        attenuation of every wall it properly crosses (wall endpoints
        count as crossings, the path's own endpoints do not).
    ref_loss : float
        Loss in dB at the 1 m reference distance.
    exponent : float
        Path-loss exponent.
    min_distance : float
        Distances are clamped below this value (singularity guard).
    faps : iterable of (x, y, tx_power_dbm), optional
        Signal sources for ``rssi_all``.
    """

    def __init__(self, walls, ref_loss, exponent, min_distance, faps=()):
        # Per wall: ax, ay, bx, by, dx, dy, attenuation.
        self._walls = [
            (
                float(ax),
                float(ay),
                float(bx),
                float(by),
                float(bx) - float(ax),
                float(by) - float(ay),
                float(att),
            )
            for ax, ay, bx, by, att in walls
        ]
        self._ref_loss = float(ref_loss)
        self._loss_coef = 10.0 * float(exponent)
        self._min_distance = float(min_distance)
        self._faps = [(float(x), float(y), float(tx)) for x, y, tx in faps]

    @property
    def n_faps(self) -> int:
        return len(self._faps)

    def crossing_indices(self, ax: float, ay: float, bx: float, by: float) -> list:
        """Indices of walls properly crossed by the open segment (a, b)."""
        px, py, qx, qy = _canonical(ax, ay, bx, by)
        pdx = qx - px
        pdy = qy - py
        out = []
        for k, (wax, way, wbx, wby, wdx, wdy, _att) in enumerate(self._walls):
            d1 = wdx * (py - way) - wdy * (px - wax)
            d2 = wdx * (qy - way) - wdy * (qx - wax)
            if (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0):
                e1 = pdx * (way - py) - pdy * (wax - px)
                e2 = pdx * (wby - py) - pdy * (wbx - px)
                if (e1 >= 0.0 and e2 <= 0.0) or (e1 <= 0.0 and e2 >= 0.0):
                    out.append(k)
        return out

    def path_loss(self, ax: float, ay: float, bx: float, by: float) -> float:
        """Log-distance loss in dB plus the attenuation of crossed walls."""
        px, py, qx, qy = _canonical(ax, ay, bx, by)
        pdx = qx - px
        pdy = qy - py
        dist = sqrt(pdx * pdx + pdy * pdy)
        if dist < self._min_distance:
            dist = self._min_distance
        loss = self._ref_loss + self._loss_coef * log10(dist)
        for wax, way, wbx, wby, wdx, wdy, att in self._walls:
            d1 = wdx * (py - way) - wdy * (px - wax)
            d2 = wdx * (qy - way) - wdy * (qx - wax)
            if (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0):
                e1 = pdx * (way - py) - pdy * (wax - px)
                e2 = pdx * (wby - py) - pdy * (wbx - px)
                if (e1 >= 0.0 and e2 <= 0.0) or (e1 <= 0.0 and e2 >= 0.0):
                    loss += att
        return loss

    def rssi_all(self, mx: float, my: float) -> list:
        """RSSI in dBm from every configured source at point (mx, my)."""
        ref_loss = self._ref_loss
        loss_coef = self._loss_coef
        min_distance = self._min_distance
        walls = self._walls
        out = []
        for fx, fy, tx in self._faps:
            px, py, qx, qy = _canonical(fx, fy, mx, my)
            pdx = qx - px
            pdy = qy - py
            dist = sqrt(pdx * pdx + pdy * pdy)
            if dist < min_distance:
                dist = min_distance
            loss = ref_loss + loss_coef * log10(dist)
            for wax, way, wbx, wby, wdx, wdy, att in walls:
                d1 = wdx * (py - way) - wdy * (px - wax)
                d2 = wdx * (qy - way) - wdy * (qx - wax)
                if (d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0):
                    e1 = pdx * (way - py) - pdy * (wax - px)
                    e2 = pdx * (wby - py) - pdy * (wbx - px)
                    if (e1 >= 0.0 and e2 <= 0.0) or (e1 <= 0.0 and e2 >= 0.0):
                        loss += att
            out.append(tx - loss)
        return out
