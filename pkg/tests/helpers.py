"""
Shared test helpers.
"""

from pathlib import Path

from src.llm import LLMGateway, ScriptedProvider

FIXTURES = Path(__file__).parent / "fixtures"

# Queries and Top-1 locator the scripted fixture produces
SCRIPTED_QUERIES = [
    "TuRBO trust region Bayesian optimization",
    "high-dimensional expensive black-box optimization",
]
TOP1_TITLE = "Scalable Global Optimization via Local Bayesian Optimization"
TOP1_PDF = "https://arxiv.org/pdf/1910.01739"


def make_gateway(responses: dict) -> LLMGateway:
    """Gateway over an inline fixture: {prompt: [responses...]}."""
    stages = {name: {"sequence": list(seq)} for name, seq in responses.items()}
    return LLMGateway(provider = ScriptedProvider({"stages": stages}))


def scripted_response(prompt: str) -> str:
    """Fallback text of one prompt in the scripted fixture."""
    import yaml

    data = yaml.safe_load((FIXTURES / "scripted.yaml").read_text(encoding = "utf-8"))
    return data["stages"][prompt]["fallback"]


def match_record(a: str, b: str, index: int = 0):
    """A decided match between two fresh candidates, `a` winning."""
    from src.models import MatchRecord

    return MatchRecord(
        index = index, phase = 1, first = a, second = b, winner = a, loser = b,
        winner_rating = 1500, loser_rating = 1500, winner_rd = 350, loser_rd = 350,
        winner_matches = 0, loser_matches = 0, expected_winner = 0.5,
        delta_winner = 96, delta_loser = -96,
    )
