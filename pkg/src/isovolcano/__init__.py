"""Class groups of imaginary quadratic orders, isogeny volcanoes, and the
existence of primes with prescribed volcano shapes."""

from .groups import AbelianGroupDescriptor, invariant_factors
from .quadforms import (
    ClassGroup,
    QuadForm,
    class_group,
    class_number,
    class_number_formula,
    compose,
    discriminant_factor,
    form_order,
    form_pow,
    inverse,
    prime_form,
    principal_form,
    reduce_form,
    reduced_forms,
    validate_discriminant,
)

__all__ = [
    "AbelianGroupDescriptor",
    "ClassGroup",
    "QuadForm",
    "class_group",
    "class_number",
    "class_number_formula",
    "compose",
    "discriminant_factor",
    "form_order",
    "form_pow",
    "inverse",
    "invariant_factors",
    "prime_form",
    "principal_form",
    "reduce_form",
    "reduced_forms",
    "validate_discriminant",
]

from .ordertower import OrderTower, kappa_structure, lambda_structure
from .solvability import Verdict, VolcanoSpec, decide_existence
from .isogeny import build_graph, classify_component, contains_volcano
from .fields import FieldCtx

__all__ += [
    "OrderTower",
    "kappa_structure",
    "lambda_structure",
    "Verdict",
    "VolcanoSpec",
    "decide_existence",
    "build_graph",
    "classify_component",
    "contains_volcano",
    "FieldCtx",
]

__version__ = "0.1.0"
