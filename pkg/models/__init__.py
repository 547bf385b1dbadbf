from models.action import BasisAction, matched_next_coefficient
from models.coulomb import CoulombRecurrence, coulomb_H_action, coulomb_coeffs
from models.params import CoulombParams, ModelTag, SexticParams, WellClass
from models.potential import brute_force_minima, classify_wells, count_wells, potential
from models.sextic import SexticRecurrence, sextic_H_action, sextic_coeffs
