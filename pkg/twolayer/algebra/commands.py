# twolayer/algebra/commands.py
import inspect

import click
import numpy as np

from ..config import pass_config
from ..errors import UsageError
from .brackets import adjoint, commutator, structure_subspaces
from .exppoly import parse_exppoly
from .notation import format_element, parse_element
from .subalgebras import (
    FUNCTION_PARAMS,
    SUBALGEBRAS,
    build_subalgebra,
    closure_summary,
    sample_subalgebras,
    subalgebra_closed,
)

# scalar parameters shared by the subalgebra families
SCALAR_OPTIONS = ("a", "b", "kappa", "nu", "mu", "rho", "sigma")

algebra_cli = click.Group("algebra", help="Exact checks in the symmetry algebra.")


@algebra_cli.command("commutator")
@click.argument("first")
@click.argument("second")
def commutator_command(first, second):
    """[FIRST, SECOND], e.g. 'Dt' 'X(t^2)'."""
    click.echo(format_element(commutator(parse_element(first), parse_element(second))))


@algebra_cli.command("adjoint")
@click.option("--by", "generator", required=True, help="Element A of Ad(exp(eps A)).")
@click.option("--epsilon", default="1", show_default=True, help="Group parameter, exact rational.")
@click.argument("target")
def adjoint_command(generator, epsilon, target):
    """Ad(exp(epsilon A)) TARGET."""
    try:
        eps = parse_exppoly(epsilon).constant_value()
    except ValueError as exc:
        raise UsageError(f"epsilon must be a constant: {exc}") from exc
    click.echo(format_element(adjoint(parse_element(generator), eps, parse_element(target))))


@algebra_cli.command("subspaces")
@click.argument("element")
def subspaces_command(element):
    """Membership of ELEMENT in the ideals used to classify the symmetry group."""
    e = parse_element(element)
    for name, member in structure_subspaces().items():
        click.echo(f"{name}: {'true' if member(e) else 'false'}")


def _collect(name, scalars, extra):
    factory = SUBALGEBRAS.get(name)
    if factory is None:
        raise UsageError(f"unknown subalgebra {name!r}; known: {', '.join(SUBALGEBRAS)}")
    accepted = inspect.signature(factory).parameters
    params = {k: v for k, v in scalars.items() if v is not None}
    for item in extra:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        params[key.strip()] = value.strip()
    unknown = sorted(set(params) - set(accepted))
    if unknown:
        raise UsageError(f"{name} takes {', '.join(accepted)}; got unknown {', '.join(unknown)}")
    for key in FUNCTION_PARAMS & set(params):
        params[key] = parse_exppoly(params[key])
    if "z_degree" in params:
        params["z_degree"] = int(params["z_degree"])
    return params


@algebra_cli.command("closure")
@click.option("--subalgebra", "name", default=None, help=f"One of {', '.join(SUBALGEBRAS)}.")
@click.option("--a", default=None)
@click.option("--b", default=None)
@click.option("--kappa", default=None)
@click.option("--nu", default=None)
@click.option("--mu", default=None)
@click.option("--rho", default=None)
@click.option("--sigma", default=None)
@click.option("--param", "extra", multiple=True, help="Other parameters as name=value (f, g, ... as exp-polys).")
@click.option("--all", "sweep", is_flag=True, help="Check every family at random parameter points.")
@click.option("--samples", type=click.IntRange(min=1), default=5, show_default=True)
@pass_config
def closure_command(config, name, a, b, kappa, nu, mu, rho, sigma, extra, sweep, samples):
    """Whether the generators of a subalgebra close under the bracket."""
    if sweep:
        specs = sample_subalgebras(np.random.default_rng(config.seed), samples)
    elif name:
        scalars = dict(a=a, b=b, kappa=kappa, nu=nu, mu=mu, rho=rho, sigma=sigma)
        specs = [build_subalgebra(name, **_collect(name, scalars, extra))]
    else:
        raise UsageError("give --subalgebra NAME or --all")
    for spec in specs:
        summary = closure_summary(spec, subalgebra_closed(spec))
        click.echo(summary if not sweep else f"{spec.name}: {summary}")
