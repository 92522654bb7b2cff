"""
Dependency injection container for GeomKit.

The container owns the process-wide analysis settings (loaded once from
``$GEOM_KIT_CONFIG`` / ``$GEOM_KIT_SEED``) and hands out task runners sized from them.
Uses dependency-injector so tests and the CLI can override either provider.
"""

from dependency_injector import containers, providers

from geomkit_lib.any.utils import OrderedTaskRunner
from geomkit_lib.config.loaders import load_settings
from geomkit_lib.config.schemas import AnalysisSettings, Tolerances


class GeomKitIoCContainer(containers.DeclarativeContainer):
    """
    Inversion of Control (IoC) container for GeomKit.

    Example:
    -------
        ```python
        from geomkit_lib.any.container import GeomKitIoCContainer

        container = GeomKitIoCContainer()
        settings = container.settings()      # singleton
        runner = container.task_runner()     # fresh runner, sized from settings

        # Override in tests
        container.settings.override(AnalysisSettings(max_workers=1))
        ```

    """

    # Singleton: settings (loaded once, reused)
    settings = providers.Singleton(load_settings)

    # Factory: ordered thread-pool runner for independent span computations
    task_runner = providers.Factory(
        OrderedTaskRunner,
        max_workers=settings.provided.max_workers,
    )


# Global singleton container instance
container = GeomKitIoCContainer()


def get_settings() -> AnalysisSettings:
    """
    Get analysis settings (singleton).

    Example:
    -------
        ```python
        from geomkit_lib.any.container import get_settings

        seed = get_settings().seed
        ```

    """
    return container.settings()


def get_tolerances() -> Tolerances:
    """Get the configured tolerances."""
    return container.settings().tolerances


def get_task_runner() -> OrderedTaskRunner:
    """Get an ordered task runner sized from the settings."""
    return container.task_runner()


def reset_container() -> None:
    """
    Drop cached settings and provider overrides.

    Primarily useful in tests that change ``GEOM_KIT_*`` environment variables.
    """
    container.reset_singletons()
    container.reset_override()
