"""Regenerates the synthetic recordings under data/."""
import math
import pathlib
import random

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def fmt(x):
    return repr(float(x))


def ramp_motion():
    # Elbow 0 -> 150 deg linearly over 3 s, 100 Hz; shoulder 0 -> 30 deg.
    rows = ["t,shoulder_angle,elbow_angle"]
    for k in range(301):
        t = k / 100
        rows.append(f"{fmt(t)},{fmt(10.0 * t)},{fmt(50.0 * t)}")
    (DATA / "synthetic_ramp_motion.csv").write_text("\n".join(rows) + "\n")


def quintic(s):
    return 10 * s**3 - 15 * s**4 + 6 * s**5


def curl_motion(rng):
    # Rest-to-rest curl, 1 s rest on each side, 100 Hz, small pose-estimation noise.
    rows = ["t,shoulder_angle,elbow_angle,wrist_accel"]
    for k in range(501):
        t = k / 100
        s = min(max((t - 1.0) / 3.0, 0.0), 1.0)
        sdd = (60 * s - 180 * s**2 + 120 * s**3) / 9.0 if 0 < s < 1 else 0.0
        rows.append(
            f"{fmt(t)},{fmt(30 * quintic(s) + rng.gauss(0, 0.2))},"
            f"{fmt(150 * quintic(s) + rng.gauss(0, 0.2))},{fmt(0.45 * math.radians(150) * sdd)}"
        )
    (DATA / "synthetic_curl_motion.csv").write_text("\n".join(rows) + "\n")


def emg(rng):
    # Four channels at 1 kHz: Gaussian-modulated bursts, deltoid first, brachioradialis last.
    centres = {"deltoid": 1.8, "triceps": 2.3, "biceps": 2.3, "brachioradialis": 2.8}
    gains = {"deltoid": 0.6, "triceps": 0.5, "biceps": 1.0, "brachioradialis": 0.25}
    rows = ["t,deltoid,triceps,biceps,brachioradialis"]
    for k in range(5001):
        t = k / 1000
        cells = [fmt(t)]
        for name in centres:
            env = gains[name] * math.exp(-0.5 * ((t - centres[name]) / 0.35) ** 2)
            cells.append(fmt(env * math.sin(2 * math.pi * 83.0 * t + rng.uniform(-0.3, 0.3))
                             + rng.gauss(0, 0.01)))
        rows.append(",".join(cells))
    (DATA / "synthetic_emg.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    rng = random.Random(7)
    ramp_motion()
    curl_motion(rng)
    emg(rng)
