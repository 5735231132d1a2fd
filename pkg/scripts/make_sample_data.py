"""Regenerate the bundled sample data files in canonical serialized form.

Run from the repo root:  python scripts/make_sample_data.py
"""

from __future__ import annotations

import json
from pathlib import Path

from hfig.data_model import parse_dataset, serialize_dataset

T_BEFORE = 1420798224  # 2015-01-09T10:10:24Z
T_AFTER = 1423742720  # 2015-02-12T12:05:20Z

# (id, label, units, min, max, warning_min, warning_max, value_before, value_after)
GROUPS = [
    ("Blood pressure", [
        ("systolic", "Systolic", "mmHg", 90, 120, 80, 140, 145, 128),
        ("diastolic", "Diastolic", "mmHg", 60, 80, 50, 90, 95, 84),
    ]),
    ("Physical activity", [
        ("active_days", "Active days", "days/week", 3, 7, None, None, 1, 4),
        ("steps_per_day", "Steps per day", "steps", 7000, 12000, 4000, None, 3500, 8200),
    ]),
    ("Body composition", [
        ("bmi", "BMI", "kg/m2", 18.5, 25, None, 30, 31.5, 28.4),
        ("waist", "Waist diameter", "cm", 70, 94, None, 102, 104, 98),
        ("fat_pct", "Fat percentage", "%", 8, 20, None, 25, 27.5, 23),
    ]),
    ("Sleep", [
        ("time_in_bed", "Time in bed", "h", 7, 9, 6, 10, 5.5, 7.4),
        ("time_asleep", "Time asleep", "h", 6.5, 8.5, 5.5, None, 5.1, 6.9),
    ]),
    ("Fitness", [
        ("resting_hr", "Resting heart rate", "bpm", 50, 70, None, 80, 78, 66),
        ("fitness_index", "Fitness index", "", 30, 45, None, None, 26, 33),
        ("muscular_force", "Muscular force", "score", 5, 10, None, None, 4, 6),
        ("muscular_endurance", "Muscular endurance", "score", 5, 10, None, None, 3.5, 5.5),
        ("balance", "Balance", "score", 5, 10, None, None, 6, 7.5),
    ]),
    ("Lab tests", [
        ("hemoglobin", "Hemoglobin", "g/L", 130, 170, None, None, 138, 144),
        ("fb_gluc", "fB-Gluc", "mmol/L", 4, 6, None, 7, 6.8, 5.9),
        ("cholesterol", "Cholesterol", "mmol/L", 3, 5, None, 6.2, 6.6, 5.4),
        ("hdl", "HDL", "mmol/L", 1, 2.1, None, None, 0.9, 1.2),
        ("ldl", "LDL", "mmol/L", 1, 3, None, 4.1, 4.4, 3.3),
        ("triglycerides", "Triglycerides", "mmol/L", 0.5, 1.7, None, 2.2, 2.4, 1.8),
    ]),
    ("Nutrition", [
        ("meal_regularity", "Meal regularity", "score", 6, 10, None, None, 3, 7),
        ("meal_quality", "Vegetables and fruits", "score", 6, 10, None, None, 4, 6.5),
        ("sugar_intake", "Sugar intake", "g/day", 0, 30, None, 50, 65, 38),
        ("fat_quality", "Fat quality", "score", 6, 10, None, None, 5, 7),
        ("fiber_intake", "Fiber intake", "g/day", 25, 40, None, None, 14, 24),
        ("salt_intake", "Salt intake", "g/day", 0, 5, None, 7, 9.5, 6.4),
    ]),
    ("Drugs", [
        ("tobacco", "Tobacco", "cigarettes/day", 0, 0, None, 5, 10, 2),
        ("alcohol", "Alcohol", "doses/week", 0, 7, None, 14, 18, 9),
        ("drug_abuse", "Drug abuse", "score", 0, 0, None, None, 0, 0),
        ("medication_abuse", "Medication abuse", "score", 0, 0, None, None, 0, 0),
    ]),
    ("Emotional wellbeing", [
        ("depression_level", "Depression level", "score", 0, 4, None, 6, 7, 4.5),
        ("stress_level", "Stress level", "score", 0, 5, None, 7, 7.8, 5.6),
        ("stress_recovery", "Stress recovery", "score", 6, 10, 4, None, 3.2, 6.4),
        ("optimism", "Optimism", "score", 6, 10, 5, None, 4.6, 6.2),
    ]),
]


def build_patient() -> dict:
    groups = []
    for group_label, rows in GROUPS:
        measurements = []
        for mid, label, units, lo, hi, wlo, whi, before, after in rows:
            m: dict = {"id": mid, "label": label, "units": units, "min": lo, "max": hi}
            if wlo is not None:
                m["warning_min"] = wlo
            if whi is not None:
                m["warning_max"] = whi
            m["samples"] = [
                {"timestamp": T_BEFORE, "value": before},
                {"timestamp": T_AFTER, "value": after},
            ]
            measurements.append(m)
        groups.append({"label": group_label, "measurements": measurements})
    return {"subject": "Modeled patient, health coaching program", "groups": groups}


def build_tracker_example() -> dict:
    return {
        "activities": [
            {"startTime": "2015-02-16T08:00:00Z", "steps": 8500, "distance": 6.4,
             "floors": 12, "calories": 2350},
            {"startTime": "2015-02-17T08:00:00Z", "steps": 10400, "distance": 7.9,
             "floors": 9, "calories": 2510},
            {"startTime": "2015-02-18T08:00:00Z", "steps": 7600, "distance": 5.8,
             "floors": 14, "calories": 2280},
        ]
    }


def build_steps_mapping() -> dict:
    # only steps ships with ranges; other tracker metrics need user-supplied ones
    return {
        "metrics": {
            "steps": {
                "group": "Physical activity",
                "id": "steps_per_day",
                "label": "Steps per day",
                "units": "steps",
                "min": 7000,
                "max": 12000,
                "warning_min": 4000,
            }
        }
    }


def main() -> None:
    data_dir = Path(__file__).resolve().parent.parent / "src" / "hfig" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)

    patient = serialize_dataset(parse_dataset(json.dumps(build_patient())))
    (data_dir / "modeled_patient.json").write_text(patient, encoding="utf-8")

    tracker = json.dumps(build_tracker_example(), indent=2) + "\n"
    (data_dir / "tracker_fitbit_example.json").write_text(tracker, encoding="utf-8")

    mapping = json.dumps(build_steps_mapping(), indent=2) + "\n"
    (data_dir / "fitbit_steps_mapping.json").write_text(mapping, encoding="utf-8")

    print(f"wrote sample data to {data_dir}")


if __name__ == "__main__":
    main()
