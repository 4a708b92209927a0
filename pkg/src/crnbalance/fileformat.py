"""Text format for networks with kinetics, and its parser/renderer.

    # example
    species X1 X2 X3
    r1: 2 X1 -> X1 + X2 rate 1
    r2: X1 + X2 -> 2 X1 rate 3/2
    kinetics powerlaw
    order r1: X1=2
    order r2: X1=1, X2=1

A complex is `0` or a `+`-separated list of `coeff name` terms (coefficient
optional, nonnegative rational). The kinetics block is one of:

    kinetics massaction
    kinetics powerlaw     followed by one `order <label>: S=val, ...` per reaction
    kinetics polypl       followed by `term <label> coeff <a>: S=val, ...` lines
    kinetics hill         followed by `hill <label>: S=(f=<val>, d=<val>), ...`

Unlisted species default to order zero. Numbers may be integers, `p/q`
rationals (kept exact) or decimals (stored as floats). `#` starts a comment.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .kinetics import (HillKinetics, Kinetics, PolyPLKinetics, PowerLawKinetics,
                       hill, mass_action_from, poly_pl, power_law)
from .network import Complex, ReactionNetwork, build_network


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = "" if line is None else f" (line {line}" + (
            f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class UnknownSpeciesError(ParseError):
    pass


class MissingKineticsRowError(ParseError):
    pass


class NegativeRateError(ParseError):
    pass


_NUMBER = re.compile(r"[+-]?(\d+/\d+|\d+\.\d*([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?"
                     r"|\d+[eE][+-]?\d+|\d+)$")


def _parse_number(token: str, line: int):
    """Exact Fraction for ints and p/q, float for decimals."""
    if not _NUMBER.match(token):
        raise ParseError(f"expected a number, got {token!r}", line)
    if "/" in token:
        return Fraction(token)
    if any(c in token for c in ".eE"):
        return float(token)
    return Fraction(int(token))


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _parse_complex(text: str, species_index: dict[str, int], line: int):
    text = text.strip()
    if not text:
        raise ParseError("empty complex", line)
    coeffs = [Fraction(0)] * len(species_index)
    if text == "0":
        return coeffs
    for part in text.split("+"):
        tokens = part.split()
        if len(tokens) == 1:
            coeff, name = Fraction(1), tokens[0]
        elif len(tokens) == 2:
            # Stoichiometry must stay exact; decimal literals convert via
            # Decimal so e.g. 0.5 really means 1/2.
            token = tokens[0]
            try:
                coeff = Fraction(token) if "/" in token or token.lstrip("+-").isdigit() \
                    else Fraction(Decimal(token))
            except (ValueError, InvalidOperation, ZeroDivisionError):
                raise ParseError(f"bad stoichiometric coefficient {token!r}", line)
            name = tokens[1]
        else:
            raise ParseError(f"malformed complex term {part.strip()!r}", line)
        if name not in species_index:
            raise UnknownSpeciesError(f"unknown species {name!r}", line)
        if coeff < 0:
            raise ParseError(f"negative stoichiometric coefficient for {name}", line)
        coeffs[species_index[name]] += coeff
    return coeffs


def _parse_assignments(text: str, species_index: dict[str, int], line: int):
    """`S1=v, S2=v` into a {species index: value} dict."""
    out: dict[int, object] = {}
    text = text.strip()
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise ParseError(f"expected name=value, got {item.strip()!r}", line)
        name, value = item.split("=", 1)
        name = name.strip()
        if name not in species_index:
            raise UnknownSpeciesError(f"unknown species {name!r}", line)
        idx = species_index[name]
        if idx in out:
            raise ParseError(f"species {name} assigned twice", line)
        out[idx] = _parse_number(value.strip(), line)
    return out


_HILL_ENTRY = re.compile(r"^\(\s*f\s*=\s*(?P<f>[^,\s]+)\s*,\s*d\s*=\s*(?P<d>[^)\s]+)\s*\)$")


def _parse_hill_assignments(text: str, species_index: dict[str, int], line: int):
    out: dict[int, tuple[object, object]] = {}
    text = text.strip()
    if not text:
        return out
    # split on commas that are not inside parentheses
    items, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append(text[start:i])
            start = i + 1
    items.append(text[start:])
    for item in items:
        if "=" not in item:
            raise ParseError(f"expected name=(f=..., d=...), got {item.strip()!r}", line)
        name, value = item.split("=", 1)
        name = name.strip()
        if name not in species_index:
            raise UnknownSpeciesError(f"unknown species {name!r}", line)
        match = _HILL_ENTRY.match(value.strip())
        if not match:
            raise ParseError(f"malformed hill entry {value.strip()!r}", line)
        out[species_index[name]] = (_parse_number(match["f"], line),
                                    _parse_number(match["d"], line))
    return out


def parse_crn(text: str) -> tuple[ReactionNetwork, Kinetics]:
    """Parse the text format into a validated network and kinetics."""
    species: list[str] = []
    species_index: dict[str, int] = {}
    complexes: list[list[Fraction]] = []
    complex_index: dict[tuple, int] = {}
    reactions: list[tuple[int, int, str]] = []
    rates: list[object] = []
    labels: dict[str, int] = {}
    family: str | None = None
    order_rows: dict[str, dict[int, object]] = {}
    term_rows: dict[str, list[tuple[object, dict[int, object]]]] = {}
    hill_rows: dict[str, dict[int, tuple[object, object]]] = {}

    def intern_complex(coeffs: list[Fraction]) -> int:
        key = tuple(coeffs)
        if key not in complex_index:
            complex_index[key] = len(complexes)
            complexes.append(coeffs)
        return complex_index[key]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = _strip_comment(raw).strip()
        if not stmt:
            continue
        head = stmt.split(None, 1)[0]
        if head == "species":
            for name in stmt.split()[1:]:
                if name in species_index:
                    raise ParseError(f"duplicate species {name!r}", lineno)
                species_index[name] = len(species)
                species.append(name)
            if len(species) == 0:
                raise ParseError("species line declares no names", lineno)
        elif head == "kinetics":
            tokens = stmt.split()
            if family is not None:
                raise ParseError("second kinetics block", lineno)
            if len(tokens) != 2 or tokens[1] not in ("massaction", "powerlaw",
                                                     "polypl", "hill"):
                raise ParseError("expected: kinetics massaction|powerlaw|polypl|hill",
                                 lineno)
            family = tokens[1]
        elif head == "order":
            if family != "powerlaw":
                raise ParseError("order lines require `kinetics powerlaw` first", lineno)
            body = stmt[len("order"):].strip()
            label, _, rest = body.partition(":")
            label = label.strip()
            if label not in labels:
                raise ParseError(f"order line for unknown reaction {label!r}", lineno)
            if label in order_rows:
                raise ParseError(f"duplicate order line for {label!r}", lineno)
            order_rows[label] = _parse_assignments(rest, species_index, lineno)
        elif head == "term":
            if family != "polypl":
                raise ParseError("term lines require `kinetics polypl` first", lineno)
            body = stmt[len("term"):].strip()
            match = re.match(r"^(?P<label>\S+)\s+coeff\s+(?P<coeff>\S+)\s*:\s*(?P<rest>.*)$",
                             body)
            if not match:
                raise ParseError("expected: term <label> coeff <a>: S=val, ...", lineno)
            label = match["label"]
            if label not in labels:
                raise ParseError(f"term line for unknown reaction {label!r}", lineno)
            coeff = _parse_number(match["coeff"], lineno)
            if coeff <= 0:
                raise ParseError("poly-PL term coefficients must be positive", lineno)
            term_rows.setdefault(label, []).append(
                (coeff, _parse_assignments(match["rest"], species_index, lineno)))
        elif head == "hill":
            if family != "hill":
                raise ParseError("hill lines require `kinetics hill` first", lineno)
            body = stmt[len("hill"):].strip()
            label, _, rest = body.partition(":")
            label = label.strip()
            if label not in labels:
                raise ParseError(f"hill line for unknown reaction {label!r}", lineno)
            if label in hill_rows:
                raise ParseError(f"duplicate hill line for {label!r}", lineno)
            hill_rows[label] = _parse_hill_assignments(rest, species_index, lineno)
        else:
            match = re.match(r"^(?P<label>[^:\s]+)\s*:\s*(?P<body>.*)$", stmt)
            if not match:
                raise ParseError(f"unrecognized statement {stmt!r}", lineno)
            label, body = match["label"], match["body"]
            if family is not None:
                raise ParseError("reaction lines must precede the kinetics block", lineno)
            if label in labels:
                raise ParseError(f"duplicate reaction label {label!r}", lineno)
            if "->" not in body:
                raise ParseError("reaction needs `->`", lineno)
            lhs, rhs = body.split("->", 1)
            rhs, _, rate_part = rhs.partition(" rate ")
            if not rate_part.strip():
                raise ParseError("reaction needs `rate <positive number>`", lineno)
            rate = _parse_number(rate_part.strip(), lineno)
            if (isinstance(rate, Fraction) and rate <= 0) or (
                    isinstance(rate, float) and rate <= 0):
                raise NegativeRateError(f"rate for {label} must be positive", lineno)
            reactant = intern_complex(_parse_complex(lhs, species_index, lineno))
            product = intern_complex(_parse_complex(rhs, species_index, lineno))
            reactions.append((reactant, product, label))
            labels[label] = len(rates)
            rates.append(rate)

    if not species:
        raise ParseError("no species declared")
    if not reactions:
        raise ParseError("no reactions declared")
    if family is None:
        raise ParseError("no kinetics block")

    net = build_network(species, complexes, reactions)
    m = len(species)

    if family == "massaction":
        return net, mass_action_from(net, rates)
    if family == "powerlaw":
        rows = []
        for _, _, label in reactions:
            if label not in order_rows:
                raise MissingKineticsRowError(f"no order line for reaction {label!r}")
            row = [Fraction(0)] * m
            for idx, value in order_rows[label].items():
                row[idx] = value
            rows.append(row)
        return net, power_law(rows, rates)
    if family == "polypl":
        all_terms = []
        for _, _, label in reactions:
            if label not in term_rows:
                raise MissingKineticsRowError(f"no term line for reaction {label!r}")
            terms = []
            for coeff, assignment in term_rows[label]:
                row = [Fraction(0)] * m
                for idx, value in assignment.items():
                    row[idx] = value
                terms.append((coeff, row))
            all_terms.append(terms)
        return net, poly_pl(all_terms, rates)
    # hill
    f_rows, d_rows = [], []
    for _, _, label in reactions:
        if label not in hill_rows:
            raise MissingKineticsRowError(f"no hill line for reaction {label!r}")
        f_row = [Fraction(0)] * m
        d_row = [Fraction(0)] * m
        for idx, (f_val, d_val) in hill_rows[label].items():
            f_row[idx] = f_val
            d_row[idx] = d_val
        f_rows.append(f_row)
        d_rows.append(d_row)
    return net, hill(f_rows, d_rows, rates)


def _format_number(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else str(value)
    return repr(float(value))


def _format_complex(cpx: Complex, species: tuple[str, ...]) -> str:
    parts = []
    for coeff, name in zip(cpx.coeffs, species):
        if coeff == 0:
            continue
        parts.append(name if coeff == 1 else f"{_format_number(coeff)} {name}")
    return " + ".join(parts) if parts else "0"


def _row_values(float_row, exact_row):
    if exact_row is not None:
        return list(exact_row)
    return [float(v) for v in float_row]


def _format_assignments(values, species) -> str:
    parts = [f"{name}={_format_number(v)}"
             for v, name in zip(values, species) if v != 0]
    return ", ".join(parts)


def render_crn(net: ReactionNetwork, kin: Kinetics) -> str:
    """Text that parses back to an equal network and kinetics."""
    lines = ["species " + " ".join(net.species)]
    for q, rx in enumerate(net.reactions):
        rate = _format_number(kin.rates[q] if not float(kin.rates[q]).is_integer()
                              else Fraction(int(kin.rates[q])))
        lines.append(f"{rx.label}: {_format_complex(net.complexes[rx.reactant], net.species)}"
                     f" -> {_format_complex(net.complexes[rx.product], net.species)}"
                     f" rate {rate}")
    if isinstance(kin, PowerLawKinetics):
        lines.append("kinetics powerlaw")
        for q, rx in enumerate(net.reactions):
            exact = kin.exact_orders[q] if kin.exact_orders is not None else None
            row = _row_values(kin.orders[q], exact)
            lines.append(f"order {rx.label}: {_format_assignments(row, net.species)}")
    elif isinstance(kin, PolyPLKinetics):
        lines.append("kinetics polypl")
        for q, rx in enumerate(net.reactions):
            for j in range(kin.term_coeffs[q].shape[0]):
                coeff = (kin.exact_term_coeffs[q][j]
                         if kin.exact_term_coeffs is not None
                         else float(kin.term_coeffs[q][j]))
                exact = (kin.exact_term_orders[q][j]
                         if kin.exact_term_orders is not None else None)
                row = _row_values(kin.term_orders[q][j], exact)
                lines.append(f"term {rx.label} coeff {_format_number(coeff)}: "
                             f"{_format_assignments(row, net.species)}")
    elif isinstance(kin, HillKinetics):
        lines.append("kinetics hill")
        for q, rx in enumerate(net.reactions):
            parts = []
            for i, name in enumerate(net.species):
                if kin.orders[q, i] != 0:
                    parts.append(f"{name}=(f={_format_number(float(kin.orders[q, i]))}, "
                                 f"d={_format_number(float(kin.dissoc[q, i]))})")
            lines.append(f"hill {rx.label}: {', '.join(parts)}")
    else:
        raise ValueError("rendering is defined for power-law, poly-PL and hill kinetics")
    return "\n".join(lines) + "\n"
