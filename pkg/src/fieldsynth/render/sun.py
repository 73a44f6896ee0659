"""Solar position from geographic location and UTC time.

Standard low-cost astronomy: Julian-century polynomials for the sun's
apparent longitude and declination plus the equation of time, the same
formulation used by the widely published solar-position spreadsheets.
Elevation is geometric (no atmospheric refraction). Accuracy is well
inside +-0.5 degrees over the years this generator cares about.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone


def _julian_day(t: datetime) -> float:
    if t.tzinfo is not None:
        t = t.astimezone(timezone.utc).replace(tzinfo=None)
    year, month = t.year, t.month
    day = (t.day + t.hour / 24.0 + t.minute / 1440.0
           + (t.second + t.microsecond / 1e6) / 86400.0)
    if month <= 2:
        year -= 1
        month += 12
    a = year // 100
    b = 2 - a + a // 4
    return (math.floor(365.25 * (year + 4716))
            + math.floor(30.6001 * (month + 1)) + day + b - 1524.5)


def sun_declination_eqtime(t: datetime) -> tuple[float, float]:
    """(declination deg, equation of time minutes) at UTC datetime t."""
    jc = (_julian_day(t) - 2451545.0) / 36525.0

    mean_long = (280.46646 + jc * (36000.76983 + jc * 0.0003032)) % 360.0
    mean_anom = 357.52911 + jc * (35999.05029 - 0.0001537 * jc)
    ecc = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc)

    m = math.radians(mean_anom)
    eq_center = (math.sin(m) * (1.914602 - jc * (0.004817 + 0.000014 * jc))
                 + math.sin(2 * m) * (0.019993 - 0.000101 * jc)
                 + math.sin(3 * m) * 0.000289)
    true_long = mean_long + eq_center
    omega = math.radians(125.04 - 1934.136 * jc)
    app_long = true_long - 0.00569 - 0.00478 * math.sin(omega)

    mean_obliq = 23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (
        0.00059 - jc * 0.001813))) / 60.0) / 60.0
    obliq = mean_obliq + 0.00256 * math.cos(omega)

    decl = math.degrees(math.asin(
        math.sin(math.radians(obliq)) * math.sin(math.radians(app_long))))

    var_y = math.tan(math.radians(obliq / 2.0)) ** 2
    l_rad = math.radians(mean_long)
    eqtime = 4.0 * math.degrees(
        var_y * math.sin(2 * l_rad)
        - 2.0 * ecc * math.sin(m)
        + 4.0 * ecc * var_y * math.sin(m) * math.cos(2 * l_rad)
        - 0.5 * var_y * var_y * math.sin(4 * l_rad)
        - 1.25 * ecc * ecc * math.sin(2 * m))
    return decl, eqtime


def sun_direction(latitude: float, longitude: float,
                  t: datetime) -> tuple[float, float]:
    """(azimuth deg from north, clockwise; elevation deg) for a UTC time."""
    if not -90.0 <= latitude <= 90.0:
        raise ValueError("latitude outside [-90, 90]")
    if t.tzinfo is not None:
        t = t.astimezone(timezone.utc).replace(tzinfo=None)
    decl, eqtime = sun_declination_eqtime(t)

    minutes = (t.hour * 60.0 + t.minute + t.second / 60.0
               + t.microsecond / 6e7)
    true_solar = (minutes + eqtime + 4.0 * longitude) % 1440.0
    ha = true_solar / 4.0 - 180.0
    if ha < -180.0:
        ha += 360.0

    lat = math.radians(latitude)
    d = math.radians(decl)
    h = math.radians(ha)
    cos_zen = (math.sin(lat) * math.sin(d)
               + math.cos(lat) * math.cos(d) * math.cos(h))
    cos_zen = min(1.0, max(-1.0, cos_zen))
    zenith = math.degrees(math.acos(cos_zen))
    elevation = 90.0 - zenith

    sin_zen = math.sin(math.radians(zenith))
    if abs(sin_zen) < 1e-9:
        azimuth = 180.0  # sun at the zenith: azimuth is arbitrary
    else:
        cos_az = ((math.sin(lat) * cos_zen - math.sin(d))
                  / (math.cos(lat) * sin_zen))
        cos_az = min(1.0, max(-1.0, cos_az))
        az = math.degrees(math.acos(cos_az))
        azimuth = (az + 180.0) % 360.0 if ha > 0.0 else (540.0 - az) % 360.0
    return azimuth, elevation


@dataclass
class SunSpec:
    latitude: float
    longitude: float
    when: datetime
    irradiance: float = 1.0
    ambient: float = 0.35
    azimuth: float = field(init=False)
    elevation: float = field(init=False)

    def __post_init__(self):
        self.azimuth, self.elevation = sun_direction(
            self.latitude, self.longitude, self.when)

    def direction_world(self):
        """Unit vector pointing toward the sun; x east, y north, z up."""
        import numpy as np
        az = math.radians(self.azimuth)
        el = math.radians(self.elevation)
        return np.array([math.sin(az) * math.cos(el),
                         math.cos(az) * math.cos(el),
                         math.sin(el)])
