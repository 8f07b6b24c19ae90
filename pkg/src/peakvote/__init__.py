"""Winner determination, manipulation and bribery for weighted elections with
top-truncated ballots, with single-peaked and nearly single-peaked electorates
treated as first-class inputs."""

from .bribery import BribePlan, BriberyInstance, check_plan, solve_bribery, solve_bribery_bruteforce
from .core import (
    Ballot,
    BallotDomain,
    DomainError,
    NotApplicable,
    Profile,
    ResourceError,
    WeightedBallot,
    is_single_peaked,
    maverick_count,
    pairwise_margin,
    weak_condorcet_winners,
)
from .manipulation import CwcmInstance, ManipulationCertificate, check_certificate, solve_cwcm, solve_cwcm_bruteforce
from .rules import RuleSpec, TieBreak, TruncationScheme, WinnerModel, positional_scores, winners

__version__ = "0.1.0"
