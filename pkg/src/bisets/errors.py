"""Exception hierarchy. Everything raised on bad input derives from BisetError."""


class BisetError(ValueError):
    pass


class DegreeMismatchError(BisetError):
    pass


class NotAMemberError(BisetError):
    pass


class NotASubgroupError(BisetError):
    pass


class NotNormalError(BisetError):
    pass


class BoundExceededError(BisetError):
    pass


class MorphismConstraintError(BisetError):
    """A group element does not satisfy the conjugation constraint of a Coeq morphism."""


class ObjectMismatchError(BisetError):
    pass


class NotAHomomorphismError(BisetError):
    pass


class NotCoequalizingError(BisetError):
    pass


class NotTransitiveError(BisetError):
    pass


class GroupMismatchError(BisetError):
    pass
