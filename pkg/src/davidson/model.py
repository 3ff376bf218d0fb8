"""
src/davidson/model.py

Modelo de Bradley-Terry estendido com empates (Davidson):

    P(i > j) = pi_i / (pi_i + pi_j + nu * sqrt(pi_i * pi_j))
    P(i ~ j) = nu * sqrt(pi_i * pi_j) / (pi_i + pi_j + nu * sqrt(pi_i * pi_j))

O ajuste usa a reformulação log-linear de Poisson: cada par contribui três
células (vitórias de i, vitórias de j, empates) com preditores

    mu_ij + lambda_i/2 - lambda_j/2,  mu_ij + lambda_j/2 - lambda_i/2,  mu_ij + log(nu)

Com interceptos livres por par, mu_ij é eliminado analiticamente e o IRLS do
GLM de Poisson coincide com Newton/Fisher scoring na verossimilhança
multinomial por par. Fixamos lambda do primeiro método em 0 e renormalizamos
os worths para somarem 1 ao final.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.optimize import linprog
from scipy.special import logsumexp

from src.dominance import ComparisonTally
from src.errors import (
    BenchmarkInputError,
    ConfigError,
    DisconnectedGraph,
    NotConverged,
    SeparationDetected,
    UnknownMethod,
)

logger = logging.getLogger(__name__)

LOG_NU_FLOOR = -30.0
SEPARATION_TOLERANCE = 1e-9
ZERO_HANDLING = ("error", "haldane")


@dataclass(frozen=True)
class FitConfig:
    """Parâmetros do ajuste de Davidson."""

    max_iterations: int = 500
    tolerance: float = 1e-10
    zero_count_handling: str = "error"
    strict: bool = False

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ConfigError("tolerance deve ser > 0")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations deve ser >= 1")
        if self.zero_count_handling not in ZERO_HANDLING:
            raise ConfigError(f"zero_count_handling deve ser um de {ZERO_HANDLING}")


@dataclass
class WorthTable:
    """Resultado do ajuste: worths no simplex, nu e diagnósticos."""

    worths: Dict[str, float]
    nu: float
    log_nu: float
    loglik: float
    iterations: int
    converged: bool
    ranking: List[str]
    pair_intercepts: Dict[Tuple[str, str], float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "worths": {method: self.worths[method] for method in self.ranking},
            "nu": self.nu,
            "log_nu": self.log_nu if math.isfinite(self.log_nu) else None,
            "loglik": self.loglik,
            "iterations": self.iterations,
            "converged": self.converged,
            "ranking": self.ranking,
            "pair_intercepts": [
                {"method_i": i, "method_j": j, "mu": mu}
                for (i, j), mu in sorted(self.pair_intercepts.items())
            ],
        }

    def to_rows(self) -> List[Tuple[str, float]]:
        """Tabela (método, worth) em ordem decrescente de worth."""
        return [(method, self.worths[method]) for method in self.ranking]


@dataclass
class _PairData:
    """Contagens empilhadas: uma linha por par, colunas (w_i, w_j, ties)."""

    methods: List[str]
    first: np.ndarray
    second: np.ndarray
    counts: np.ndarray


def _prepare(tallies: Sequence[ComparisonTally], config: FitConfig) -> _PairData:
    methods = sorted({t.method_i for t in tallies} | {t.method_j for t in tallies})
    if len(methods) < 2:
        raise BenchmarkInputError("O ajuste exige ao menos dois métodos")
    index = {method: k for k, method in enumerate(methods)}

    observed = [t for t in tallies if t.total > 0]
    graph = nx.Graph()
    graph.add_nodes_from(methods)
    graph.add_edges_from((t.method_i, t.method_j) for t in observed)
    if not nx.is_connected(graph):
        components = [sorted(c) for c in nx.connected_components(graph)]
        raise DisconnectedGraph(
            f"Grafo de comparações desconexo ({len(components)} componentes): {components}"
        )

    counts = np.array([[t.wins_i, t.wins_j, t.ties] for t in observed], dtype=np.float64)
    if config.zero_count_handling == "haldane":
        counts += 0.5

    return _PairData(
        methods=methods,
        first=np.array([index[t.method_i] for t in observed]),
        second=np.array([index[t.method_j] for t in observed]),
        counts=counts,
    )


def _design(data: _PairData, with_ties: bool) -> np.ndarray:
    """
    Matriz de delineamento (pares x categorias x parâmetros).

    Parâmetros: lambda_2..lambda_m (lambda_1 = 0) e, se houver empates, log(nu).
    """
    m = len(data.methods)
    n_params = (m - 1) + (1 if with_ties else 0)
    design = np.zeros((len(data.counts), 3, n_params))
    rows = np.arange(len(data.counts))
    for column, sign in ((data.first, 0.5), (data.second, -0.5)):
        mask = column > 0
        design[rows[mask], 0, column[mask] - 1] += sign
        design[rows[mask], 1, column[mask] - 1] -= sign
    if with_ties:
        design[:, 2, -1] = 1.0
    return design


def _check_separation(design: np.ndarray, counts: np.ndarray, with_ties: bool) -> None:
    """
    Levanta SeparationDetected se a verossimilhança cresce sem limite numa
    direção que favorece alguma vitória observada (MLE inexistente).

    Uma direção d é de recessão quando, para toda célula observada k de um
    par, (x_l - x_k) . d <= 0 nas demais células l. O programa linear busca
    a direção com maior folga nas restrições de células de vitória; direções
    que só aumentam nu (pares apenas com empates) não contam.
    """
    categories = 3 if with_ties else 2
    constraints = []
    objective = np.zeros(design.shape[2])
    for row in range(len(counts)):
        for k in range(categories):
            if counts[row, k] <= 0:
                continue
            for other in range(categories):
                if other == k:
                    continue
                difference = design[row, other] - design[row, k]
                constraints.append(difference)
                if k < 2:
                    objective += difference
    if not objective.any():
        return
    result = linprog(
        objective,
        A_ub=np.array(constraints),
        b_ub=np.zeros(len(constraints)),
        bounds=[(-1.0, 1.0)] * design.shape[2],
        method="highs",
    )
    if result.status == 0 and result.fun < -SEPARATION_TOLERANCE:
        raise SeparationDetected(
            "Separação detectada: algum grupo de métodos nunca perde (ou nunca vence) "
            "fora de empates; use zero_count_handling='haldane'"
        )


def _linear_predictor(design: np.ndarray, theta: np.ndarray, with_ties: bool) -> np.ndarray:
    eta = design @ theta
    if not with_ties:
        eta[:, 2] = -np.inf
    return eta


def _loglik(counts: np.ndarray, eta: np.ndarray) -> float:
    log_norm = logsumexp(eta, axis=1)
    log_p = eta - log_norm[:, None]
    log_p = np.where(counts > 0, log_p, 0.0)
    return float(np.sum(counts * log_p))


def _score_and_information(
    design: np.ndarray, counts: np.ndarray, eta: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Gradiente e informação de Fisher da verossimilhança multinomial por par."""
    n = counts.sum(axis=1)
    probs = np.exp(eta - logsumexp(eta, axis=1)[:, None])
    residual = counts - n[:, None] * probs
    gradient = np.einsum("pk,pkd->d", residual, design)
    mean_x = np.einsum("pk,pkd->pd", probs, design)
    second = np.einsum("pk,pkd,pke->pde", probs, design, design)
    covariance = second - np.einsum("pd,pe->pde", mean_x, mean_x)
    information = np.einsum("p,pde->de", n, covariance)
    return gradient, information


def fit(tallies: Sequence[ComparisonTally], config: FitConfig = FitConfig()) -> WorthTable:
    """
    Ajusta o modelo de Davidson às contagens por par.

    Args:
        tallies: Contagens por par não ordenado de métodos.
        config: Iterações, tolerância e tratamento de zeros.

    Returns:
        WorthTable: Worths no simplex, nu, log-verossimilhança e ranking.

    Raises:
        DisconnectedGraph: Grafo de comparações desconexo.
        SeparationDetected: MLE inexistente e tratamento de zeros 'error'.
        NotConverged: Apenas com `config.strict`; caso contrário o flag
            `converged` fica False.
    """
    data = _prepare(tallies, config)
    counts = data.counts
    with_ties = bool(counts[:, 2].sum() > 0)
    design = _design(data, with_ties)
    if config.zero_count_handling == "error":
        _check_separation(design, counts, with_ties)

    theta = np.zeros(design.shape[2])
    if with_ties:
        wins = counts[:, :2].sum()
        tie_share = counts[:, 2].sum() / counts.sum()
        # nu inicial com worths iguais: P(empate) = nu / (2 + nu)
        theta[-1] = math.log(2 * tie_share / max(1 - tie_share, 1e-12)) if wins > 0 else 0.0

    eta = _linear_predictor(design, theta, with_ties)
    loglik = _loglik(counts, eta)
    converged = False
    iteration = 0
    for iteration in range(1, config.max_iterations + 1):
        gradient, information = _score_and_information(design, counts, eta)
        step = np.linalg.lstsq(information, gradient, rcond=None)[0]

        # meio-passo até a verossimilhança não diminuir
        scale = 1.0
        while True:
            candidate = theta + scale * step
            candidate_eta = _linear_predictor(design, candidate, with_ties)
            candidate_loglik = _loglik(counts, candidate_eta)
            if candidate_loglik >= loglik - 1e-12 * abs(loglik) or scale < 1e-10:
                break
            scale /= 2

        change = abs(candidate_loglik - loglik)
        theta, eta, loglik = candidate, candidate_eta, candidate_loglik
        logger.debug(f"Iteração {iteration}: loglik={loglik:.12g}")
        if change <= config.tolerance * (1.0 + abs(loglik)):
            converged = True
            break

    if not converged:
        message = f"Ajuste de Davidson não convergiu em {config.max_iterations} iterações"
        if config.strict:
            raise NotConverged(message)
        logger.warning(message)

    return _build_table(data, theta, with_ties, loglik, iteration, converged)


def _build_table(
    data: _PairData, theta: np.ndarray, with_ties: bool, loglik: float, iterations: int, converged: bool
) -> WorthTable:
    m = len(data.methods)
    lambdas = np.concatenate([[0.0], theta[: m - 1]])
    log_worths = lambdas - logsumexp(lambdas)
    worths = np.exp(log_worths)

    log_nu = float(theta[-1]) if with_ties else -math.inf
    nu = 0.0 if log_nu < LOG_NU_FLOOR else math.exp(log_nu)

    # interceptos de Poisson no ótimo: total ajustado do par = total observado
    intercepts = {}
    for row, (i, j) in enumerate(zip(data.first, data.second)):
        half = 0.5 * (log_worths[i] - log_worths[j])
        terms = [half, -half] + ([log_nu] if with_ties else [])
        intercepts[(data.methods[i], data.methods[j])] = float(
            math.log(data.counts[row].sum()) - logsumexp(terms)
        )

    table = {method: float(worths[k]) for k, method in enumerate(data.methods)}
    ranking = sorted(data.methods, key=lambda method: (-table[method], method))
    logger.info(
        f"Davidson ajustado: {m} métodos, nu={nu:.6g}, loglik={loglik:.6f}, "
        f"iterações={iterations}, convergiu={converged}"
    )
    return WorthTable(
        worths=table,
        nu=nu,
        log_nu=log_nu,
        loglik=loglik,
        iterations=iterations,
        converged=converged,
        ranking=ranking,
        pair_intercepts=intercepts,
    )


def score_vector(tallies: Sequence[ComparisonTally], table: WorthTable) -> np.ndarray:
    """
    Componentes analíticas do escore (gradiente da log-verossimilhança) no
    ponto reportado, nos parâmetros livres (lambda_2..lambda_m[, log nu]).
    """
    data = _prepare(tallies, FitConfig())
    with_ties = bool(data.counts[:, 2].sum() > 0)
    design = _design(data, with_ties)
    log_worths = np.log([table.worths[m] for m in data.methods])
    theta = log_worths[1:] - log_worths[0]
    if with_ties:
        theta = np.concatenate([theta, [table.log_nu]])
    gradient, _ = _score_and_information(design, data.counts, _linear_predictor(design, theta, with_ties))
    return gradient


def preference_probability(table: WorthTable, i: str, j: str) -> Tuple[float, float, float]:
    """
    Probabilidades (i vence, j vence, empate) sob o modelo ajustado.

    Raises:
        UnknownMethod: Se i ou j não estão na tabela.
    """
    for method in (i, j):
        if method not in table.worths:
            raise UnknownMethod(f"Método desconhecido: {method!r}")
    if i == j:
        raise BenchmarkInputError("preference_probability exige métodos distintos")
    return davidson_probabilities(table.worths[i], table.worths[j], table.nu)


def davidson_probabilities(pi_i: float, pi_j: float, nu: float) -> Tuple[float, float, float]:
    """Triplo de probabilidades de Davidson para worths e nu dados."""
    tie = nu * math.sqrt(pi_i * pi_j)
    denominator = pi_i + pi_j + tie
    return pi_i / denominator, pi_j / denominator, tie / denominator


def simulate_tallies(
    worths: Dict[str, float], nu: float, n: int, rng: Optional[np.random.Generator] = None
) -> List[ComparisonTally]:
    """
    Sorteia contagens do modelo de Davidson: `n` comparações por par.

    Args:
        worths: Worths verdadeiros por método.
        nu: Parâmetro de empate.
        n: Número de instâncias (comparações por par).
        rng: Gerador numpy (padrão: default_rng()).

    Returns:
        Lista de ComparisonTally, uma por par não ordenado.
    """
    rng = rng or np.random.default_rng()
    methods = sorted(worths)
    tallies = []
    for a, method_i in enumerate(methods):
        for method_j in methods[a + 1:]:
            probs = davidson_probabilities(worths[method_i], worths[method_j], nu)
            wins_i, wins_j, ties = rng.multinomial(n, probs)
            tallies.append(ComparisonTally(method_i, method_j, int(wins_i), int(wins_j), int(ties)))
    return tallies
