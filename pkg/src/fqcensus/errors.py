"""Exception types shared across the package."""


class BudgetExceeded(ValueError):
    """An enumeration would visit more states than the configured budget."""

    def __init__(self, states: int, budget: int, what: str = "enumeration"):
        self.states = states
        self.budget = budget
        super().__init__(f"{what} needs {states} states, budget is {budget}")


class VerificationError(RuntimeError):
    """Two independent characterizations disagreed on the same input."""


DEFAULT_BUDGET = 2**24


def check_budget(states: int, budget: int | None, what: str = "enumeration") -> None:
    if budget is None:
        budget = DEFAULT_BUDGET
    if states > budget:
        raise BudgetExceeded(states, budget, what)
