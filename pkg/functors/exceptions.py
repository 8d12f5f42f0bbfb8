class ModuleError(Exception):
    pass


class NonSplitResidueField(ModuleError):
    """An endomorphism ring has a residue field bigger than k."""
    pass


class DecompositionError(ModuleError):
    pass


class UnlistedModule(ModuleError):
    """An indecomposable module is not isomorphic to any listed object."""
    pass
