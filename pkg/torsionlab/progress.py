from typing import Dict, Iterable, Optional

import rich
from rich.console import Group
from rich.progress import BarColumn, TaskID, TextColumn, TimeElapsedColumn
from rich.rule import Rule

from .types import SweepProgress


class SweepProgressDisplay(rich.progress.Progress):
    def __init__(self, title: str, console: Optional[rich.console.Console] = None) -> None:
        """
        Prepare a progress display for one or more catalog sweeps. Once created, call "start()" to begin showing the
        output, and "stop()" to finish it

        :param title: The title rendered above the progress bars
        :param console: An optional console object to use for output
        """
        self._console = rich.console.Console(stderr=True) if console is None else console
        self._title = title
        super().__init__(TextColumn("[deep_sky_blue2]{task.description}"),
                         BarColumn(),
                         TextColumn("{task.completed}/{task.total} ({task.percentage:>3.0f}%)"),
                         TextColumn("•"),
                         TimeElapsedColumn(),
                         console=self._console)
        self._sweep_tasks: Dict[str, TaskID] = {}

    def get_renderables(self) -> Iterable[rich.console.RenderableType]:
        """
        Render a horizontal rule with the title above the actual progress bars
        """
        yield Group(Rule(title=self._title), self.make_tasks_table(self.tasks))

    def __call__(self, sweep_progress: SweepProgress, description: str, units_total: int, units_done: int) -> None:
        """
        Callable provided to run_sweep(). Only called from the thread driving the sweep

        :param sweep_progress: The type of progress being reported
        :param description: The description of the sweep the progress is reported for
        :param units_total: The total units of work of the sweep
        :param units_done: The currently finished units of work
        """
        if sweep_progress == SweepProgress.Started:
            if description not in self._sweep_tasks:
                self._sweep_tasks[description] = self.add_task(description, total=units_total, completed=units_done)
        elif sweep_progress == SweepProgress.InProgress:
            self.update(self._sweep_tasks[description], total=units_total, completed=units_done)
        elif sweep_progress == SweepProgress.Done:
            self.update(self._sweep_tasks[description], total=units_total, completed=units_done)
            self.stop_task(self._sweep_tasks[description])
