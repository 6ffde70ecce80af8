import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from exceptions import TFIonError

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """
    Outcome of one validation check.

    Attributes:
        name: Name of the check function
        passed: True if every compared value is within tolerance
        deviation: Largest deviation found
        tolerance: Tolerance the deviation was held against
        details: Per-item deviations or values, for the report
        error: The exception that stopped the check, if any
    """

    name: str
    passed: bool
    deviation: float
    tolerance: float
    details: Dict[str, float] = field(default_factory=dict)
    error: Optional[Exception] = None

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.error is not None:
            return f"{status} {self.name}: {type(self.error).__name__}: {self.error}"
        return f"{status} {self.name}: deviation {self.deviation:.3e} (tolerance {self.tolerance:.1e})"


class Toolbox:
    """
    Toolbox class that holds the validation checks.

    A check is a plain function taking (pipeline, settings) and returning a
    CheckResult; its docstring is its description.
    """

    def __init__(self, tools: Optional[List[Callable]] = None):
        """
        Initialize a new Toolbox instance.

        Args:
            tools (Optional[List[Callable]]): Initial list of checks to add to the toolbox.
                If None, starts with an empty toolbox.
        """
        self.toolbox = []
        if tools:
            self.add_tools(tools)
        logger.debug(f"Toolbox initialized with {len(self.toolbox)} checks")

    def add_tool(self, tool: Callable) -> None:
        """
        Adds a check to the toolbox.

        Args:
            tool: Check to add to the toolbox
        """
        self.toolbox.append(tool)
        logger.debug(f"Check {tool.__name__} added to the toolbox")

    def add_tools(self, toollist: List[Callable]) -> None:
        """
        Adds a list of checks to the toolbox.

        Args:
            toollist: List of checks to add to the toolbox
        """
        for tool in toollist:
            self.add_tool(tool)

    def remove_tool(self, tool: Callable) -> None:
        """
        Removes a check from the toolbox.

        Args:
            tool: Check to remove from the toolbox
        """
        self.toolbox.remove(tool)
        logger.debug(f"Check {tool.__name__} removed from the toolbox")

    def prepare_tool_descriptions(self) -> str:
        """
        Prepares descriptions of all available checks.

        Returns:
            str: One line per check, its name and the first line of its docstring.
        """
        lines = []
        for tool in self.toolbox:
            doc = (tool.__doc__ or "").strip().splitlines()
            lines.append(f"{tool.__name__}: {doc[0] if doc else ''}")
        return "\n".join(lines)

    def get_tool_list(self) -> str:
        """
        Returns a list of all available checks in the toolbox.

        Returns:
            str: A formatted string containing all check names.
        """
        return "\n".join(tool.__name__ for tool in self.toolbox)

    def check_tool_exists(self, tool_choice: str) -> bool:
        """
        Check whether the check exists in our toolbox.

        Args:
            tool_choice: The name of the check

        Returns:
            bool: True if the check exists, False otherwise
        """
        exists = tool_choice in [tool.__name__ for tool in self.toolbox]
        logger.debug(f"Check {tool_choice} {'found' if exists else 'not found'} in the toolbox.")
        return exists

    def __len__(self) -> int:
        return len(self.toolbox)

    def execute_tool(self, tool_choice: str, pipeline, settings: Dict) -> CheckResult:
        """
        Executes the named check.

        Numerical errors raised by the check are caught and turned into a
        failed CheckResult carrying the exception.

        Args:
            tool_choice: The name of the check to execute
            pipeline: The Pipeline the check reads its series from
            settings: Effective configuration values

        Returns:
            CheckResult

        Raises:
            KeyError: If no check of that name is registered
        """
        for tool in self.toolbox:
            if tool.__name__ == tool_choice:
                logger.debug(f"Executing check {tool_choice}")
                try:
                    result = tool(pipeline, settings)
                except TFIonError as e:
                    logger.error(f"Error executing check {tool_choice}: {str(e)}")
                    return CheckResult(tool_choice, False, float("inf"), float("nan"), error=e)
                logger.info(result.summary())
                return result
        raise KeyError(f"no check named {tool_choice!r}")

    def run_all(self, pipeline, settings: Dict) -> List[CheckResult]:
        """
        Executes every registered check in order.

        Returns:
            List of CheckResult, one per check
        """
        return [self.execute_tool(tool.__name__, pipeline, settings) for tool in self.toolbox]
