#!/usr/bin/env python3
"""Build the bundled fixture corpus under tests/data/.

Every record is written by hand together with its node/edge counts, so the
frozen statistics come from manual counting, not from the library under
test.  The English record is the real published sample record, verbatim.

Writes: fixture_corpus.jsonl, fixture_stats.json, falcone.dot,
candidates_self.jsonl, candidates_corrupt.jsonl, candidates_mixed.jsonl.
"""

from __future__ import annotations

import json
import pathlib

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

FALCONE_GRAPHVIZ = (
    "digraph {\n"
    "    rankdir=LR;\n"
    "    node [shape=box];\n"
    "\n"
    '    "Nicoletta Falcone" -> "M. Condinanzi" [label="represent" dir=none];\n'
    '    "The Comission of the European Comminities" -> "Nicoletta Falcone" '
    '[label="application for annulment of the decision of 2 May 2002 of the '
    "selection board in Competition COM/A/10/01 to exclude the applicant from "
    "the written tests on the ground that she did not obtain sufficient marks "
    'to be included among the 400 best candidates"];\n'
    "}"
)

FALCONE_RECORD = {
    "ID": "45",
    "category": "EU law",
    "diagram_number": "7",
    "case_name": "Case T-207/02: Nicoletta Falcone v Commission of the\nEuropean Communities",
    "case_number": "C2005/006/64",
    "document_url": (
        "https://eur-lex.europa.eu/legal-content/EN/TXT/PDF/"
        "?uri=CELEX:C2005/006/64&qid=1713891140330"
    ),
    "year": "2004",
    "text": (
        "In Case T-207/02: Nicoletta Falcone, a candidate in Competition "
        "COM/A/10/01, represented by M. Condinanzi, against Commission of the "
        "European Communities (Agent: J. Currall, assisted by A. Dal Ferro, "
        "with an address for service in Luxembourg) - application for "
        "annulment of the decision of 2 May 2002 of the selection board in "
        "Competition COM/A/10/01 to exclude the applicant from the written "
        "tests on the ground that she did not obtain sufficient marks to be "
        "included among the 400 best candidates - the Court of First Instance "
        "(Second Chamber), composed of J. Pirrung, President, A.W.H. Meij and "
        "N. Forwood, Judges; H. Jung, Registrar, has given a judgment on 26 "
        "October 2004, in which it:"
    ),
    "Graphviz": FALCONE_GRAPHVIZ,
    "language": "English",
}

# Hand-maintained so the generator stays independent of the library.
LANGUAGE_CODES = {
    "Bulgarian": "BG",
    "Spanish": "ES",
    "Czech": "CS",
    "Danish": "DA",
    "German": "DE",
    "Estonian": "ET",
    "Greek": "EL",
    "English": "EN",
    "French": "FR",
    "Croatian": "HR",
    "Italian": "IT",
    "Latvian": "LV",
    "Lithuanian": "LT",
    "Hungarian": "HU",
    "Maltese": "MT",
    "Dutch": "NL",
    "Polish": "PL",
    "Portuguese": "PT",
    "Romanian": "RO",
    "Slovak": "SK",
    "Slovenian": "SL",
    "Finnish": "FI",
    "Swedish": "SV",
}

# (language name, DOT source, hand-counted nodes, hand-counted edges, text)
FIXTURES: list[tuple[str, str, int, int, str]] = [
    (
        "Bulgarian",
        'digraph {\n'
        '    // жалба срещу решение на Комисията\n'
        '    "Комисия на ЕС" [shape=doubleoctagon];\n'
        '    "Член 263 ДФЕС" [shape=trapezium];\n'
        '    "жалба за отмяна";\n'
        '    "Комисия на ЕС" -> "жалба за отмяна" [label="подава"];\n'
        '    "жалба за отмяна" -> "Член 263 ДФЕС" [label="основана на" style=dotted];\n'
        '}\n',
        3,
        2,
        "Жалба за отмяна на решение на Комисията, основана на член 263 ДФЕС.",
    ),
    (
        "Spanish",
        'DiGraph tribunal {\n'
        '    node [shape=box];\n'
        '    "Tribunal de Justicia" [shape=doubleoctagon];\n'
        '    demanda [label="demanda de indemnización"];\n'
        '    "Reino de España" [shape=doubleoctagon];\n'
        '    "Reino de España" -> demanda;\n'
        '    demanda -> "Tribunal de Justicia" [label="presentada ante"];\n'
        '}\n',
        3,
        2,
        "El Reino de España presenta una demanda de indemnización ante el Tribunal de Justicia.",
    ),
    (
        "Czech",
        'graph {\n'
        '    "Jan Novák" [shape=doubleoctagon]\n'
        '    "Marie Nováková" [shape=doubleoctagon]\n'
        '    "Jan Novák" -- "Marie Nováková" [label="manželství" style=bold]\n'
        '}\n',
        2,
        1,
        "Jan Novák a Marie Nováková uzavřeli manželství; spor se týká společného jmění.",
    ),
    (
        "Danish",
        'digraph arv {\n'
        '    "Afdøde Peter Hansen" [shape=ellipse];\n'
        '    "Anna Hansen" [shape=doubleoctagon];\n'
        '    "Afdøde Peter Hansen" -> "Anna Hansen" [label="arv" style=dotted];\n'
        '}\n',
        2,
        1,
        "Anna Hansen arver efter afdøde Peter Hansen i henhold til arveloven.",
    ),
    (
        "German",
        'digraph {\n'
        '    /* Verfahren vor dem Gerichtshof */\n'
        '    subgraph klage {\n'
        '        "Bundesrepublik Deutschland" [shape=doubleoctagon];\n'
        '        "Europäische Kommission" [shape=doubleoctagon];\n'
        '    }\n'
        '    "Vertragsverletzung" [shape=box];\n'
        '    "Europäische Kommission" -> "Vertragsverletzung" -> '
        '"Bundesrepublik Deutschland" [label="rügt"];\n'
        '}\n',
        3,
        2,
        "Die Europäische Kommission rügt eine Vertragsverletzung der Bundesrepublik Deutschland.",
    ),
    (
        "Estonian",
        'digraph {\n'
        '    rankdir=LR;\n'
        '    kohus [label="Riigikohus" shape=doubleoctagon];\n'
        '    otsus2021 [label="otsus nr 5-21-3"];\n'
        '    kohus -> otsus2021 [label="teeb"];\n'
        '}\n',
        2,
        1,
        "Riigikohus teeb otsuse nr 5-21-3 põhiseaduslikkuse järelevalve asjas.",
    ),
    (
        "Greek",
        'digraph {\n'
        '    "Δικαστήριο" [shape=doubleoctagon];\n'
        '    "απόφαση \\"Χ κατά Επιτροπής\\"" [shape=box];\n'
        '    "Δικαστήριο" -> "απόφαση \\"Χ κατά Επιτροπής\\"" [label="εκδίδει"];\n'
        '}\n',
        2,
        1,
        "Το Δικαστήριο εκδίδει την απόφαση «Χ κατά Επιτροπής».",
    ),
    ("English", FALCONE_GRAPHVIZ, 3, 2, FALCONE_RECORD["text"]),
    (
        "French",
        'digraph {\n'
        '    "Cour de cassation" [shape=doubleoctagon, fontsize=10];\n'
        '    "article 1240 du code civil" [shape=trapezium];\n'
        '    "demande prescrite" [shape=box];\n'
        '    "demande prescrite" -> "article 1240 du code civil" [label="fondée sur", style=dashed];\n'
        '    "Cour de cassation" -> "demande prescrite" [label="rejette"];\n'
        '}\n',
        3,
        2,
        "La Cour de cassation rejette la demande prescrite fondée sur l'article 1240 du code civil.",
    ),
    (
        "Croatian",
        'digraph {\n'
        '    "Ustavni sud" [shape=doubleoctagon];\n'
        '    "USRH" [shape=doubleoctagon];\n'
        '    "Ustavni sud" -> "USRH" [label="isto kao" dir=none];\n'
        '}\n',
        2,
        1,
        "Ustavni sud Republike Hrvatske (USRH) odlučuje o ustavnoj tužbi.",
    ),
    (
        "Italian",
        'digraph {\n'
        '    "Corte costituzionale" [shape=doubleoctagon];\n'
        '    "sentenza n. 242\\\n del 2019" [shape=box];\n'
        '    "Corte costituzionale" -> "sentenza n. 242\\\n del 2019" [label="pronuncia"];\n'
        '}\n',
        2,
        1,
        "La Corte costituzionale pronuncia la sentenza n. 242 del 2019.",
    ),
    (
        "Latvian",
        'digraph {\n'
        '    # lieta C-123/20\n'
        '    "Senāts" [shape=doubleoctagon];\n'
        '    "spriedums lietā C-123/20" [shape=plaintext];\n'
        '    "Senāts" -> "spriedums lietā C-123/20" [label="pasludina"];\n'
        '}\n',
        2,
        1,
        "Senāts pasludina spriedumu lietā C-123/20 par nodokļu strīdu.",
    ),
    (
        "Lithuanian",
        'digraph {\n'
        '    "Konstitucinis Teismas" [shape=doubleoctagon];\n'
        '    "nutarimas" [shape=diamond];\n'
        '    "Konstitucinis Teismas" -> "nutarimas" [label="priima"];\n'
        '}\n',
        2,
        1,
        "Konstitucinis Teismas priima nutarimą dėl įstatymo konstitucingumo.",
    ),
    (
        "Hungarian",
        'digraph {\n'
        '    "Kúria" [shape=doubleoctagon];\n'
        '    "felülvizsgálati kérelem" [shape=rect];\n'
        '    "Kúria" -> "felülvizsgálati kérelem" [label="elutasítja"];\n'
        '    "Kúria" -> "felülvizsgálati kérelem" [label="érdemben vizsgálja"];\n'
        '}\n',
        2,
        2,
        "A Kúria érdemben vizsgálja, majd elutasítja a felülvizsgálati kérelmet.",
    ),
    (
        "Maltese",
        'digraph {\n'
        '    "Qorti tal-Appell" [shape=doubleoctagon];\n'
        '    "sentenza finali" [shape=none];\n'
        '    "Qorti tal-Appell" -> "sentenza finali" [label="tagħti"];\n'
        '}\n',
        2,
        1,
        "Il-Qorti tal-Appell tagħti s-sentenza finali fil-kawża ċivili.",
    ),
    (
        "Dutch",
        'digraph {\n'
        '    "Hoge Raad" [shape=doubleoctagon];\n'
        '    "artikel 6:162 BW" [shape=trapezium];\n'
        '    "onrechtmatige daad" [shape=box];\n'
        '    "onrechtmatige daad" -> "artikel 6:162 BW";\n'
        '    "Hoge Raad" -> "onrechtmatige daad" [label="beoordeelt"];\n'
        '}\n',
        3,
        2,
        "De Hoge Raad beoordeelt de onrechtmatige daad op grond van artikel 6:162 BW.",
    ),
    (
        "Polish",
        'digraph sprawa {\n'
        '    "Sąd Najwyższy" [shape=doubleoctagon],\n'
        '    "skarga kasacyjna" [shape=square],\n'
        '    "Sąd Najwyższy" -> "skarga kasacyjna" [label="oddala"]\n'
        '}\n',
        2,
        1,
        "Sąd Najwyższy oddala skargę kasacyjną w sprawie cywilnej.",
    ),
    (
        "Portuguese",
        'digraph {\n'
        '    "Supremo Tribunal de Justiça" [shape=doubleoctagon];\n'
        '    "recurso de revista" [shape=rectangle];\n'
        '    "acórdão recorrido" [shape=box];\n'
        '    "Supremo Tribunal de Justiça" -> "recurso de revista" [label="julga"];\n'
        '    "recurso de revista" -> "acórdão recorrido" [label="impugna"];\n'
        '}\n',
        3,
        2,
        "O Supremo Tribunal de Justiça julga o recurso de revista que impugna o acórdão recorrido.",
    ),
    (
        "Romanian",
        'digraph {\n'
        '    "Ion Popescu" [shape=ellipse];\n'
        '    "Maria Popescu" [shape=doubleoctagon];\n'
        '    "Elena Popescu" [shape=doubleoctagon];\n'
        '    "Ion Popescu" -> "Maria Popescu" [label="moștenire" style=dotted];\n'
        '    "Maria Popescu" -> "Elena Popescu" [label="rudenie" style=bold dir=none];\n'
        '}\n',
        3,
        2,
        "Maria Popescu dobândește prin moștenire bunurile defunctului Ion Popescu.",
    ),
    (
        "Slovak",
        'digraph {\n'
        '    node [shape=trapezium];\n'
        '    "§ 420 Občianskeho zákonníka";\n'
        '    "Najvyšší súd" [shape=doubleoctagon];\n'
        '    "Najvyšší súd" -> "§ 420 Občianskeho zákonníka" [label="aplikuje"];\n'
        '}\n',
        2,
        1,
        "Najvyšší súd aplikuje § 420 Občianskeho zákonníka o zodpovednosti za škodu.",
    ),
    (
        "Slovenian",
        'digraph {\n'
        '    edge [style=dotted];\n'
        '    "Vrhovno sodišče" [shape=doubleoctagon];\n'
        '    "zapuščina" [shape=box];\n'
        '    "Vrhovno sodišče" -> "zapuščina" [label="dedovanje"];\n'
        '}\n',
        2,
        1,
        "Vrhovno sodišče odloča o dedovanju zapuščine po pokojnem zapustniku.",
    ),
    (
        "Finnish",
        'digraph {\n'
        '    "Korkein oikeus" [shape=doubleoctagon] [fontsize=12];\n'
        '    "valituslupa" [shape=square];\n'
        '    "Korkein oikeus" -> "valituslupa" [label="myöntää"];\n'
        '}\n',
        2,
        1,
        "Korkein oikeus myöntää valitusluvan vahingonkorvausasiassa.",
    ),
    (
        "Swedish",
        'digraph mål {\n'
        '    "Högsta domstolen" [shape=doubleoctagon];\n'
        '    "prövningstillstånd" [shape=box];\n'
        '    "resningsansökan" [shape=box];\n'
        '    "Högsta domstolen" -> "prövningstillstånd" [label="beviljar"];\n'
        '    "resningsansökan" -> "prövningstillstånd" [label="avser" style=dashed];\n'
        '}\n',
        3,
        2,
        "Högsta domstolen beviljar prövningstillstånd avseende resningsansökan.",
    ),
]


def build_records() -> list[dict]:
    records = []
    for i, (language, dot, _nodes, _edges, text) in enumerate(FIXTURES, start=1):
        if language == "English":
            records.append(dict(FALCONE_RECORD))
            continue
        records.append(
            {
                "ID": str(i),
                "category": "EU law" if i % 2 else "civil law",
                "diagram_number": str(i),
                "case_name": f"Fixture case {i}",
                "case_number": f"F{i:04d}",
                "document_url": f"https://example.invalid/fixture/{i}",
                "year": str(1998 + i),
                "text": text,
                "Graphviz": dot,
                "language": language,
            }
        )
    return records


def _insert_extra_node(dot: str) -> str:
    """Textually append one extra labeled node statement before the closing
    brace; stays valid for every fixture."""
    base = dot.rstrip()
    assert base.endswith("}")
    return base[:-1] + '    "extra fixture node" [label="unmatched extra statement"];\n}\n'


def build_candidates(records: list[dict]) -> tuple[list[dict], list[dict], list[dict]]:
    self_sets, corrupt_sets, mixed_sets = [], [], []
    for i, record in enumerate(records):
        ident = {"ID": record["ID"], "language": record["language"]}
        dot = record["Graphviz"]
        self_sets.append({**ident, "candidates": [dot]})
        corrupt_sets.append(
            {
                **ident,
                "candidates": [dot.rstrip()[:-1], dot + "\ntrailing junk"],
            }
        )
        variant = i % 4
        if variant == 0:
            candidates = [dot]
        elif variant == 1:
            candidates = ['digraph { "A" -> }', dot]
        elif variant == 2:
            candidates = [_insert_extra_node(dot)]
        else:
            candidates = ["graph {", 'digraph { "a" -> }']
        mixed_sets.append({**ident, "candidates": candidates})
    return self_sets, corrupt_sets, mixed_sets


def write_jsonl(path: pathlib.Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    records = build_records()
    write_jsonl(DATA_DIR / "fixture_corpus.jsonl", records)

    stats = {
        "instances": len(FIXTURES),
        "nodes": sum(f[2] for f in FIXTURES),
        "relations": sum(f[3] for f in FIXTURES),
        "per_language": {LANGUAGE_CODES[f[0]]: 1 for f in FIXTURES},
    }
    with open(DATA_DIR / "fixture_stats.json", "w", encoding="utf-8") as fh:
        json.dump(stats, fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")

    with open(DATA_DIR / "falcone.dot", "w", encoding="utf-8") as fh:
        fh.write(FALCONE_GRAPHVIZ + "\n")

    self_sets, corrupt_sets, mixed_sets = build_candidates(records)
    write_jsonl(DATA_DIR / "candidates_self.jsonl", self_sets)
    write_jsonl(DATA_DIR / "candidates_corrupt.jsonl", corrupt_sets)
    write_jsonl(DATA_DIR / "candidates_mixed.jsonl", mixed_sets)
    print(f"wrote fixtures to {DATA_DIR}: {stats}")


if __name__ == "__main__":
    main()
