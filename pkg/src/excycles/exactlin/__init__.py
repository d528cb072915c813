from . import backend
from .field import QQ, FieldSpec, kernel_basis, rank, solve

__all__ = ["FieldSpec", "QQ", "rank", "kernel_basis", "solve", "backend"]
