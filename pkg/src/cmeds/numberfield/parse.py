"""Text forms of rationals, Gaussian numbers and factored ideals.

The formats are those produced by ``str()`` on the corresponding objects,
so every rendering parses back to an equal value.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .gaussian import GaussianInteger, GaussianRational
from .ideals import FactoredIdeal, GaussianIdeal, Order, check_order

_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS = re.compile(
    rf"^(?:(?P<re>{_RAT})(?=$|[+-]))?"
    rf"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?i)?$"
)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def parse_gaussian_rational(text: str) -> GaussianRational:
    """Parse "a", "bi", "a+bi", "-1/2*i", "p/q+r/s*i" and similar."""
    t = text.strip().replace(" ", "")
    m = _GAUSS.match(t)
    if not t or m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse {text!r} as an element of Q(i)")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text is None:
        im_part = Fraction(0)
    elif im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_text)
    return GaussianRational(re_part, im_part)


def parse_gaussian(text: str) -> GaussianInteger:
    q = parse_gaussian_rational(text)
    if q.re.denominator != 1 or q.im.denominator != 1:
        raise ValueError(f"{text!r} is not a Gaussian integer")
    return GaussianInteger(q.re.numerator, q.im.numerator)


_FACTOR = re.compile(r"^\((?P<g>[^()]+)\)(?:\^(?P<e>\d+))?$")


def parse_factored_ideal(text: str, order: Order) -> FactoredIdeal:
    """Inverse of ``str(FactoredIdeal)``: "(2)^2*(19)", "(1)", "(3)*<cofactor>"."""
    order = check_order(order)
    t = text.strip().replace(" ", "")
    if t == "(1)":
        return FactoredIdeal(order)
    factors, cofactor = [], GaussianIdeal()
    for part in t.split("*"):
        if part.startswith("<") and part.endswith(">"):
            cofactor = GaussianIdeal(parse_gaussian(part[1:-1]))
            continue
        m = _FACTOR.match(part)
        if m is None:
            raise ValueError(f"cannot parse factor {part!r}")
        factors.append((GaussianIdeal(parse_gaussian(m.group("g"))), int(m.group("e") or 1)))
    return FactoredIdeal(order, tuple(factors), cofactor)


__all__ = [
    "parse_factored_ideal",
    "parse_gaussian",
    "parse_gaussian_rational",
    "parse_rational",
]
