from typing import Optional

from .types import ProgressType


class TorsionLabConfig:
    """
    Global singleton config for torsionlab
    """
    __instance: Optional["TorsionLabConfig"] = None

    @staticmethod
    def get() -> 'TorsionLabConfig':
        """
        :return: The singleton instance of TorsionLabConfig
        """
        if TorsionLabConfig.__instance is None:
            TorsionLabConfig()
        assert TorsionLabConfig.__instance is not None
        return TorsionLabConfig.__instance

    def __init__(self):
        """
        Private initializer that creates and sets the singleton instance
        """
        if TorsionLabConfig.__instance is not None:
            raise Exception("This class is a singleton!")

        # Set default values in config
        TorsionLabConfig.__instance = self
        self._catalog_bound: Optional[int] = None
        self._modulus = 2
        self._jobs = 1
        self._progress_type = ProgressType.NoProgress
        self._certify = True

    @property
    def catalog_bound(self) -> Optional[int]:
        """
        :return: The size bound of generated catalogs, None to use the default bound of each family
        """
        return self._catalog_bound

    @catalog_bound.setter
    def catalog_bound(self, catalog_bound: Optional[int]) -> None:
        """
        Set the size bound of generated catalogs

        :param catalog_bound: The new bound, must be at least 1, or None to use the default bound of each family
        """
        if catalog_bound is not None and catalog_bound < 1:
            raise ValueError("Catalog bound must be at least 1, got {}".format(catalog_bound))
        self._catalog_bound = catalog_bound

    @property
    def modulus(self) -> int:
        """
        :return: The default modulus m of the coslice family Z_m/Ab
        """
        return self._modulus

    @modulus.setter
    def modulus(self, modulus: int) -> None:
        """
        Set the default modulus m of the coslice family Z_m/Ab

        :param modulus: The new modulus, must be positive
        """
        if modulus < 1:
            raise ValueError("Modulus must be positive, got {}".format(modulus))
        self._modulus = modulus

    @property
    def jobs(self) -> int:
        """
        :return: The number of workers used by catalog sweeps (1 means sequential)
        """
        return self._jobs

    @jobs.setter
    def jobs(self, jobs: int) -> None:
        """
        Set the number of workers used by catalog sweeps. Zero or negative values will cause torsionlab to use the
        system's default number of workers

        :param jobs: The number of workers
        """
        self._jobs = jobs

    @property
    def progress_type(self) -> ProgressType:
        """
        :return: The currently used type of progress indication
        """
        return self._progress_type

    @progress_type.setter
    def progress_type(self, progress_type: ProgressType) -> None:
        """
        Set the type of progress indication to use during catalog sweeps

        :param progress_type: The type of progress indication to use
        """
        self._progress_type = progress_type

    @property
    def certify(self) -> bool:
        """
        :return: Whether decompositions and factorizations certify themselves against the bounded oracles
        """
        return self._certify

    @certify.setter
    def certify(self, certify: bool) -> None:
        """
        Set whether decompositions and factorizations certify themselves against the bounded oracles

        :param certify: Whether to certify
        """
        self._certify = certify


# Force creation of singleton
TORSIONLAB_CONFIG = TorsionLabConfig.get()
