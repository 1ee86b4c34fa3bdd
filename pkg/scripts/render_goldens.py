"""
Regenerate the golden diagrams used by the test suite
"""

import sys
import os
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from tgwa.cli.library import builtin_scenario
from tgwa.core.logging import setup_logging
from tgwa.modules.cylinder import cylinder, render_ascii
from tgwa.modules.weight import norm_breaks, orbit_of, render_orbit
from tgwa.weyl.fixedring import norm_element

logger = setup_logging()

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def cylinder_goldens():
    """fiber-6-2 cylinders at two windows"""
    d = builtin_scenario("fiber-6-2").datum
    return {
        "cylinder_fiber_6_2_w4_m1.txt": render_ascii(cylinder(d, 4, 1)),
        "cylinder_fiber_6_2_w8_m3.txt": render_ascii(cylinder(d, 8, 3)),
    }


def orbit_goldens():
    """Residue classes of the infinite orbit under the cube of sigma"""
    scenario = builtin_scenario("infinite-orbit-breaks")
    d = scenario.datum
    orbit = orbit_of(d, scenario.orbits[0].base, 12)
    s = norm_element(d.sigma[0], d.t[0], 3)
    return {"orbit_infinite_w6_m3.txt": render_orbit(6, 3, norm_breaks(s, orbit, 6))}


def main():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    goldens = {**cylinder_goldens(), **orbit_goldens()}
    for name, text in goldens.items():
        path = GOLDEN_DIR / name
        if path.exists() and path.read_text(encoding="utf-8") == text:
            logger.info(f"{name} unchanged")
            continue
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
    logger.info(f"Rendered {len(goldens)} golden diagrams")


if __name__ == "__main__":
    main()
