# twolayer/algebra/notation.py
"""Text form ``a*Dt + b*Dy + X(<exp-poly>) + c*F + Z(<exp-poly>)``."""
import sympy
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import parse_expr

from ..errors import ExpPolyParseError
from .exppoly import TRANSFORMATIONS, ExpPoly, format_exppoly, prepare_text, t
from .models import AlgebraElement

Dt, Dy, Fsym = sympy.symbols("Dt Dy F")
Xfun, Zfun = sympy.Function("X"), sympy.Function("Z")

LOCALS = {"t": t, "exp": sympy.exp, "Dt": Dt, "Dy": Dy, "F": Fsym, "X": Xfun, "Z": Zfun}


def _scalar(value, text):
    if value.free_symbols:
        raise ExpPolyParseError(f"{text!r}: coefficient {value} is not a constant")
    return value


def parse_element(text: str) -> AlgebraElement:
    try:
        expr = parse_expr(prepare_text(text), local_dict=LOCALS, transformations=TRANSFORMATIONS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise ExpPolyParseError(f"cannot parse algebra element {text!r}: {e}") from e

    a = b = c = sympy.S.Zero
    f = g = ExpPoly.zero()
    for term in sympy.Add.make_args(sympy.expand(expr)):
        if term == 0:
            continue
        apps = [x for x in term.atoms(AppliedUndef) if x.func in (Xfun, Zfun)]
        if len(apps) > 1:
            raise ExpPolyParseError(f"{text!r}: term {term} multiplies two operators")
        if apps:
            app = apps[0]
            factor = _scalar(sympy.simplify(term / app), text)
            arg = ExpPoly.from_expr(app.args[0]) * factor
            if app.func == Xfun:
                f = f + arg
            else:
                g = g + arg
            continue
        for symbol in (Dt, Dy, Fsym):
            if term.has(symbol):
                coeff = _scalar(sympy.simplify(term / symbol), text)
                if symbol == Dt:
                    a += coeff
                elif symbol == Dy:
                    b += coeff
                else:
                    c += coeff
                break
        else:
            raise ExpPolyParseError(f"{text!r}: term {term} is not a multiple of Dt, Dy, F, X(.) or Z(.)")
    return AlgebraElement(a=a, b=b, f=f, c=c, g=g)


def _scaled(coeff, name):
    if coeff == 1:
        return name
    if coeff == -1:
        return f"-{name}"
    text = str(coeff).replace(" ", "")
    if isinstance(coeff, sympy.Add):
        text = f"({text})"
    return f"{text}*{name}"


def format_element(e: AlgebraElement) -> str:
    parts = []
    if e.a != 0:
        parts.append(_scaled(e.a, "Dt"))
    if e.b != 0:
        parts.append(_scaled(e.b, "Dy"))
    if not e.f.is_zero():
        parts.append(f"X({format_exppoly(e.f)})")
    if e.c != 0:
        parts.append(_scaled(e.c, "F"))
    if not e.g.is_zero():
        parts.append(f"Z({format_exppoly(e.g)})")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"
