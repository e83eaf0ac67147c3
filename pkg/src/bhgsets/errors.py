class BudgetExceeded(Exception):
    """An exact computation was refused because it would exceed its budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration size"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} {required} exceeds budget {budget}")


class CharacteristicError(ArithmeticError):
    """Newton recursion needs to divide by k, which vanishes when p <= k."""
