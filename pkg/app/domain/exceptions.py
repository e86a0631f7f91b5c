from typing import Optional, Tuple


class SpannerError(ValueError):
    """Базовая ошибка построения и проверки спаннеров"""


class DuplicatePointError(SpannerError):
    def __init__(self, pair: Tuple[int, int]):
        self.pair = pair
        super().__init__(f"points {pair[0]} and {pair[1]} coincide (zero distance)")


class InvalidParameterError(SpannerError):
    pass


class UnmergedGraphError(SpannerError):
    def __init__(self, incubator: Optional[tuple] = None):
        self.incubator = incubator
        super().__init__(f"incubator {incubator} has exactly one local child; merge lonely incubators first")


class InputMismatchError(SpannerError):
    pass


class PointFormatError(SpannerError):
    pass
