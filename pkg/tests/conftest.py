from gathersim.config import InitialConfiguration
from gathersim.geometry import Point


def pair(eps, a, ta, b, tb):
    """Two-agent configuration from bare coordinate tuples."""
    return InitialConfiguration(eps, (Point(*a), Point(*b)), (ta, tb))
