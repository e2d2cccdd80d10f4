# cli/serializers.py
import json
from typing import Any, Dict

from lattice.cokernel import cokernel_summary
from lattice.models import vector_to_json
from theta.bundle import classify_bundle
from theta.generators import GeneratorBasis


def dump_json(payload: Any) -> str:
    """Детерминированный JSON для stdout"""
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)


def error_json(error: Exception) -> str:
    """Ошибка в виде {"error", "message"} одной строкой для stderr"""
    to_dict = getattr(error, "to_dict", None)
    payload = to_dict() if to_dict else {"error": type(error).__name__, "message": str(error)}
    return json.dumps(payload, ensure_ascii=False, sort_keys=True)


def sections_payload(basis: GeneratorBasis) -> Dict[str, Any]:
    """
    Описание базиса образующих

    Args:
        basis: Базис образующих

    Returns:
        Классификация, коядро и по каждому b: δ_b, r(b) в координатах ядра
    """
    spec = basis.spec
    return {
        "case": classify_bundle(spec).value,
        "cokernel": cokernel_summary(spec.torus, spec.form).to_json(),
        "core_dim": basis.dim,
        "gamma": list(basis.gamma),
        "generators": [
            {
                "b": list(lifted),
                "delta": vector_to_json(basis.deltas[i]),
                "r": vector_to_json([basis.r_of_b[i]])[0],
            }
            for i, lifted in enumerate(basis.lifted_reps)
        ],
    }
