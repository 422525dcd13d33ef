"""
Aritmética reversible sobre registros little-endian

- Sumador de Cuccaro (bloques MAJ/UMA con Toffoli de fase relativa),
  en versión libre y controlada, con una ancilla de acarreo limpia.
- Sumador de Gidney: un AND por bit para los acarreos y descomputación
  por medida; lo usa la división por constante.
- Comparador |a⟩|j⟩|0⟩ → |a⟩|j⟩|[j ≥ a]⟩ por el acarreo de j + ¬a + 1.
- División por constante en el sitio |x⟩ → |q⟩|r⟩ (división con
  restauración, un paso por bit del cociente).
"""
from src.circuits.builder import CircuitBuilder, invert_gates
from src.models.circuit import Circuit, RegisterRole
from src.models.lookup import ceil_log2
from src.utils.errors import ParameterError

from typing import List, NamedTuple, Optional, Sequence

import logging

logger = logging.getLogger(__name__)


def _maj(builder: CircuitBuilder, c: int, y: int, z: int):
    """z ← maj(c, y, z); c ← c⊕z; y ← y⊕z"""
    builder.cx(z, y)
    builder.cx(z, c)
    builder.rccx(c, y, z)


def _uma(builder: CircuitBuilder, c: int, y: int, z: int):
    """Inversa de MAJ escribiendo la suma en y"""
    builder.rccx(c, y, z)
    builder.cx(z, c)
    builder.cx(c, y)


def _uma_controlada(
    builder: CircuitBuilder,
    control: int,
    c: int,
    y: int,
    z: int
):
    """Como UMA, pero y solo recibe la suma si control vale 1"""
    builder.rccx(c, y, z)
    # c guarda z⊕c_i: y ⊕= control·(z ⊕ c_i) y después y ⊕= z
    builder.ccx(control, c, y)
    builder.cx(z, y)
    builder.cx(z, c)


def emit_cuccaro_add(
    builder: CircuitBuilder,
    x: Sequence[int],
    y: Sequence[int],
    carry: int,
    control: Optional[int] = None
):
    """y ← y + x mod 2^w (o y + control·x); x y carry restaurados"""
    if len(x) != len(y):
        raise ParameterError("Sumador de Cuccaro con anchuras distintas")
    x = list(x)
    y = list(y)
    w = len(x)
    if w == 0:
        return

    # Acarreo entrante del bit i: carry para i = 0, x[i−1] después de MAJ
    acarreos = [carry] + x[:-1]
    for i in range(w - 1):
        _maj(builder, acarreos[i], y[i], x[i])

    ultimo = w - 1
    if control is None:
        builder.cx(x[ultimo], y[ultimo])
        if ultimo > 0:
            builder.cx(acarreos[ultimo], y[ultimo])
    else:
        builder.ccx(control, x[ultimo], y[ultimo])
        if ultimo > 0:
            builder.ccx(control, acarreos[ultimo], y[ultimo])

    for i in reversed(range(w - 1)):
        if control is None:
            _uma(builder, acarreos[i], y[i], x[i])
        else:
            _uma_controlada(builder, control, acarreos[i], y[i], x[i])


def emit_gidney_add(
    builder: CircuitBuilder,
    x: Sequence[int],
    y: Sequence[int],
    carries: Sequence[int]
):
    """
    y ← y + x mod 2^w con w−1 acarreos limpios

    Cada acarreo se calcula con un AND (4 T) y se descomputa con AND†,
    que la estrategia con medida deja sin T.
    """
    x = list(x)
    y = list(y)
    w = len(y)
    if len(x) != w:
        raise ParameterError("Sumador de Gidney con anchuras distintas")
    if len(carries) < w - 1:
        raise ParameterError(f"Faltan acarreos: {len(carries)} < {w - 1}")
    if w == 0:
        return
    c = [None] + list(carries[:w - 1])

    for i in range(w - 1):
        if i == 0:
            builder.and_(x[0], y[0], c[1])
        else:
            builder.cx(c[i], x[i])
            builder.cx(c[i], y[i])
            builder.and_(x[i], y[i], c[i + 1])
            builder.cx(c[i], c[i + 1])

    if w > 1:
        builder.cx(c[w - 1], y[w - 1])
    builder.cx(x[w - 1], y[w - 1])

    for i in reversed(range(w - 1)):
        if i == 0:
            builder.and_dag(x[0], y[0], c[1])
            builder.cx(x[0], y[0])
        else:
            builder.cx(c[i], c[i + 1])
            builder.and_dag(x[i], y[i], c[i + 1])
            builder.cx(c[i], x[i])
            builder.cx(x[i], y[i])


def emit_comparator(
    builder: CircuitBuilder,
    a: Sequence[int],
    j: Sequence[int],
    carry: int,
    flag: int
):
    """flag ⊕= [j ≥ a]; a, j y carry restaurados"""
    a = list(a)
    j = list(j)
    if len(a) != len(j) or not a:
        raise ParameterError("Comparador con anchuras distintas o vacías")

    for q in a:
        builder.x(q)
    builder.x(carry)
    marca = builder.mark()
    acarreos = [carry] + a[:-1]
    for i in range(len(a)):
        _maj(builder, acarreos[i], j[i], a[i])
    computo = builder.gates_since(marca)
    # Acarreo de salida de j + ¬a + 1
    builder.cx(a[-1], flag)
    builder.extend(invert_gates(computo))
    builder.x(carry)
    for q in a:
        builder.x(q)


class DivmodWorkspace(NamedTuple):
    """Qubits limpios de la división: 2 bits altos, constante y acarreos"""
    extension: List[int]
    constant: List[int]
    carries: List[int]


class DivmodLayout(NamedTuple):
    quotient: List[int]
    remainder: List[int]


def divmod_workspace_sizes(lam: int) -> tuple:
    """Anchuras (extensión, constante, acarreos); ceros si λ es potencia de 2"""
    if lam & (lam - 1) == 0:
        return 0, 0, 0
    r = ceil_log2(lam)
    return 2, r + 2, r + 1


def divmod_layout(
    x: Sequence[int],
    lam: int,
    workspace: Optional[DivmodWorkspace] = None
) -> DivmodLayout:
    """Qubits que contienen q y r tras emit_divmod"""
    x = list(x)
    r = ceil_log2(lam)
    if lam & (lam - 1) == 0:
        return DivmodLayout(quotient=x[r:], remainder=x[:r])
    registro = x + list(workspace.extension)
    return DivmodLayout(quotient=registro[r + 1:], remainder=registro[:r])


def emit_divmod(
    builder: CircuitBuilder,
    x: Sequence[int],
    lam: int,
    workspace: Optional[DivmodWorkspace] = None
) -> DivmodLayout:
    """
    |x⟩ → |q⟩|r⟩ con q = ⌊x/λ⌋ y r = x mod λ

    Con λ potencia de dos solo se reetiquetan qubits. En otro caso, sobre
    R = x ‖ 00 y para i = n−r … 0: se resta λ en la ventana [i, i+r+2);
    el bit de signo s = R[i+r+1] vale ¬q_i y, controlado por s, se vuelve
    a sumar λ en [i, i+r+1). Al final se niegan los bits del cociente.
    """
    if lam < 1:
        raise ParameterError("λ debe ser ≥ 1")
    x = list(x)
    n = len(x)
    r = ceil_log2(lam)
    if r > n:
        raise ParameterError(f"λ={lam} no cabe en un índice de {n} qubits")
    if lam & (lam - 1) == 0:
        return divmod_layout(x, lam)
    if workspace is None:
        raise ParameterError("La división por λ no potencia de 2 necesita "
                             "espacio de trabajo")

    R = x + list(workspace.extension)
    K = list(workspace.constant)
    bits_lam = [k for k in range(r + 2) if (lam >> k) & 1]

    for i in range(n - r, -1, -1):
        ventana = R[i:i + r + 2]
        # Resta: ¬(¬v + λ)
        for q in ventana:
            builder.x(q)
        for k in bits_lam:
            builder.x(K[k])
        emit_gidney_add(builder, K[:r + 2], ventana, workspace.carries)
        for k in bits_lam:
            builder.x(K[k])
        for q in ventana:
            builder.x(q)

        s = R[i + r + 1]
        for k in bits_lam:
            builder.cx(s, K[k])
        emit_gidney_add(builder, K[:r + 1], R[i:i + r + 1],
                        workspace.carries)
        for k in bits_lam:
            builder.cx(s, K[k])

    layout = divmod_layout(x, lam, workspace)
    for q in layout.quotient:
        builder.x(q)
    return layout


def build_divmod(n_index: int, lam: int) -> Circuit:
    """Circuito de división en el sitio sobre un índice de n_index qubits"""
    if n_index < 0 or lam < 1:
        raise ParameterError("Parámetros de división fuera de rango")
    builder = CircuitBuilder()
    x = builder.add_register("x", n_index, RegisterRole.INDEX)
    ext, k, c = divmod_workspace_sizes(lam)
    workspace = None
    if ext:
        workspace = DivmodWorkspace(
            extension=builder.add_register("ext", ext, RegisterRole.CLEAN),
            constant=builder.add_register("k", k, RegisterRole.CLEAN),
            carries=builder.add_register("carry", c, RegisterRole.CLEAN))
    layout = emit_divmod(builder, x, lam, workspace)
    builder.metadata["quotient_qubits"] = list(layout.quotient)
    builder.metadata["remainder_qubits"] = list(layout.remainder)
    builder.metadata["lambda"] = lam
    circuito = builder.build()
    logger.info(f"División por λ={lam} sobre {n_index} qubits: "
                f"{len(circuito.gates)} puertas")
    return circuito


def build_adder(b: int, controlled: bool = False) -> Circuit:
    """|x⟩|y⟩ → |x⟩|y + x mod 2^b⟩ (Cuccaro, una ancilla limpia)"""
    if b < 1:
        raise ParameterError("El sumador necesita b ≥ 1")
    builder = CircuitBuilder()
    control = None
    if controlled:
        (control,) = builder.add_register("ctrl", 1, RegisterRole.CONTROL)
    x = builder.add_register("x", b, RegisterRole.INDEX)
    y = builder.add_register("y", b, RegisterRole.OUTPUT)
    (carry,) = builder.add_register("carry", 1, RegisterRole.CLEAN)
    emit_cuccaro_add(builder, x, y, carry, control)
    circuito = builder.build()
    logger.info(f"Sumador b={b} controlado={controlled}: "
                f"{len(circuito.gates)} puertas")
    return circuito


def build_comparator(b: int) -> Circuit:
    """|a⟩|j⟩|0⟩ → |a⟩|j⟩|[j ≥ a]⟩"""
    if b < 1:
        raise ParameterError("El comparador necesita b ≥ 1")
    builder = CircuitBuilder()
    a = builder.add_register("a", b, RegisterRole.INDEX)
    j = builder.add_register("j", b, RegisterRole.INDEX)
    (carry,) = builder.add_register("carry", 1, RegisterRole.CLEAN)
    (flag,) = builder.add_register("flag", 1, RegisterRole.OUTPUT)
    emit_comparator(builder, a, j, carry, flag)
    return builder.build()
