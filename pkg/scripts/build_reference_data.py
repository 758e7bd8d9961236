#!/usr/bin/env python3
"""Build the bundled reference data files (seed corpus + template pool).

The released corpora behind the reference distributions are not redistributed
here; this script synthesizes stand-ins with the same structure:

  * templates.jsonl -- 326 templates (100 expert, 155 gsm8k, 71 aqua) whose
    per-shape counts match the reference operation distribution, with the
    non-expert sources covering every shape.
  * seeds.jsonl -- 1,111 annotated seed questions over the nine evaluation
    shapes with the reference per-shape counts (154/162/113/102 one-hop,
    190/100/90/100/100 two-hop), integer-only numbers skewed small, exact
    division, and distinct commutative operand pairs.

Deterministic: running it twice produces identical files.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

from arithview.aspects import SeedInstance, PlacedNumber, validate_seed_corpus, expand_suite
from arithview.expressions import evaluate, parse_expression
from arithview.numbers import NumberLiteral, render
from arithview.records import RunConfig, seed_to_record, template_to_record, write_file
from arithview.templates import inventory, make_template

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "arithview" / "data"

MASTER_SEED = 20240401

# shape -> slotted expression (aligned order)
EXPRESSIONS = {
    "a+b": "num1+num2",
    "a-b": "num1-num2",
    "a*b": "num1*num2",
    "a/b": "num1/num2",
    "a+b+c": "num1+num2+num3",
    "a+b-c": "num1+num2-num3",
    "a*(b+c)": "num1*(num2+num3)",
    "a*(b-c)": "num1*(num2-num3)",
    "(a+b)/c": "(num1+num2)/num3",
    "(a-b)/c": "(num1-num2)/num3",
    "a-b-c": "num1-num2-num3",
    "a/b+c": "num1/num2+num3",
    "a*b+c": "num1*num2+num3",
    "a*b-c": "num1*num2-num3",
    "a*b*c": "num1*num2*num3",
    "a*b/c": "num1*num2/num3",
    "a/(b+c)": "num1/(num2+num3)",
    "a/(b-c)": "num1/(num2-num3)",
    "a*(b/c)": "num1*(num2/num3)",
    "a/b*c": "num1/num2*num3",
}

# reference totals per shape (sum 326)
TEMPLATE_TOTALS = {
    "a+b": 16, "a-b": 28, "a*b": 28, "a/b": 35,
    "a+b+c": 9, "a+b-c": 23, "a*(b+c)": 20, "a*(b-c)": 13,
    "(a+b)/c": 20, "(a-b)/c": 17, "a-b-c": 3,
    "a/b+c": 3, "a*b+c": 13, "a*b-c": 5, "a*b*c": 10, "a*b/c": 51,
    "a/(b+c)": 6, "a/(b-c)": 8, "a*(b/c)": 6, "a/b*c": 12,
}

# expert allocation: ~uniform over the 11 expert shapes, capped so that the
# other sources keep at least one template of every shape (sums to 100)
EXPERT_COUNTS = {
    "a+b": 10, "a-b": 10, "a*b": 10, "a/b": 10,
    "a+b+c": 8, "a+b-c": 10, "a*(b+c)": 10, "a*(b-c)": 10,
    "(a+b)/c": 10, "(a-b)/c": 10, "a-b-c": 2,
}

SEED_TOTALS = {
    "a+b": 154, "a-b": 162, "a*b": 113, "a/b": 102,
    "a+b-c": 190, "a*(b+c)": 100, "(a+b)/c": 90, "a*(b-c)": 100, "(a-b)/c": 100,
}

NAMES = (
    "Maya Leo Priya Omar Elena Kai Nora Felix Amara Hugo Ines Jonas Lila "
    "Mateo Sana Theo Una Viktor Wren Yara Zane Anouk Bram Chiara Dario Esme "
    "Farid Greta Hana Ivo June Kofi Lena Milo Nadia Oscar Paloma Quinn Rosa Sami"
).split()

ITEMS = (
    "stickers marbles apples pencils seashells buttons stamps beads oranges "
    "coins bookmarks ribbons crayons peaches tokens pebbles muffins balloons "
    "magnets erasers acorns cherries postcards keychains pinecones walnuts "
    "daisies feathers dominoes cupcakes"
).split()

CONTAINERS = "boxes bags jars crates baskets trays tins pouches cartons bundles".split()

PLACES = (
    "library, bakery, toy shop, orchard, market stall, craft fair, greenhouse, "
    "bookshop, farm stand, workshop"
).split(", ")

TRADES = (
    "farmer florist carpenter baker tailor potter beekeeper fisherman grocer "
    "printer weaver gardener"
).split()

# -- template text patterns --------------------------------------------------
# Placeholders num1/num2/num3 are literal; {name}/{item}/... vary per template.

EXPERT_PATTERNS = {
    "a+b": [
        "{name} has num1 {item} and gets num2 more. How many {item} does {name} have in total?",
        "A {place} had num1 {item} in the morning and num2 more arrived later. How many {item} are there now?",
        "{name} collected num1 {item} and {name2} collected num2. How many {item} did they collect together?",
    ],
    "a-b": [
        "{name} had num1 {item} and gave away num2. How many {item} are left?",
        "A {place} stocked num1 {item} and sold num2 of them. How many {item} remain?",
        "Out of num1 {item}, num2 were damaged. How many {item} are undamaged?",
    ],
    "a*b": [
        "There are num1 {container} with num2 {item} in each. How many {item} are there altogether?",
        "Each of num1 {container} holds num2 {item}. How many {item} in total?",
        "{name} arranges {item} in num1 rows of num2. How many {item} are arranged?",
    ],
    "a/b": [
        "{name} shares num1 {item} equally among num2 friends. How many {item} does each friend get?",
        "num1 {item} are packed evenly into num2 {container}. How many {item} go into each one?",
        "A {place} splits num1 {item} into num2 equal piles. How many {item} are in each pile?",
    ],
    "a+b+c": [
        "{name} scored num1 points in the first round, num2 in the second and num3 in the third. How many points did {name} score in all?",
        "A {place} received num1 {item} on Monday, num2 on Tuesday and num3 on Wednesday. How many {item} arrived over the three days?",
    ],
    "a+b-c": [
        "{name} had num1 {item}, found num2 more and then lost num3. How many {item} does {name} have now?",
        "A {place} held num1 {item}, bought num2 more and sold num3. How many {item} does it hold now?",
        "{name} saved num1 coins, earned num2 more and spent num3. How many coins does {name} have left?",
    ],
    "a*(b+c)": [
        "{name} fills num1 {container}, each with num2 red {item} and num3 blue {item}. How many {item} are used?",
        "Each of num1 shelves in a {place} carries num2 thick books and num3 thin books. How many books are on the shelves?",
    ],
    "a*(b-c)": [
        "A machine runs num1 batches. Each batch makes num2 {item} but num3 of them fail. How many good {item} are made?",
        "{name} plays num1 games, attempting num2 throws each game and missing num3. How many throws does {name} make in total?",
    ],
    "(a+b)/c": [
        "{name} mixes num1 {item} with num2 more and divides them equally into num3 {container}. How many {item} go into each one?",
        "A {place} combines num1 new {item} with num2 used ones and shares them among num3 classes. How many {item} does each class get?",
    ],
    "(a-b)/c": [
        "From num1 {item}, num2 are set aside and the rest are shared by num3 people. How many {item} does each person get?",
        "A {place} takes num2 of its num1 {item} off display and packs the rest evenly into num3 {container}. How many {item} go into each one?",
    ],
    "a-b-c": [
        "{name} starts with num1 {item}, gives num2 to a friend and drops num3. How many {item} are left?",
        "A {place} opens with num1 {item}, sells num2 before noon and num3 after. How many {item} remain?",
    ],
}

# the reference (a-b)/c expert pattern above lists num2 before num1 in the
# text; keep one such reordered-text pattern to exercise span bookkeeping

GSM8K_PATTERNS = {
    "a+b": [
        "a {trade} gathered num1 {item} last week and num2 {item} this week . how many {item} were gathered in the two weeks ?",
        "{name} read num1 pages on saturday and num2 pages on sunday . how many pages did {name} read over the weekend ?",
    ],
    "a-b": [
        "a {trade} had num1 {item} and delivered num2 of them . how many {item} does the {trade} still have ?",
        "{name} had num1 minutes of battery and used num2 minutes . how many minutes are left ?",
    ],
    "a*b": [
        "a {trade} plants num1 rows with num2 seedlings in each row . how many seedlings are planted ?",
        "each crate holds num2 {item} and a {trade} loads num1 crates . how many {item} are loaded ?",
    ],
    "a/b": [
        "a {trade} sells num1 {item} for a total of $ num2 . how many {item} does one dollar buy ?",
        "{name} cuts a ribbon of num1 cm into num2 equal pieces . how long is each piece ?",
        "a {trade} pours num1 liters of juice into num2 identical bottles . how many liters go into each bottle ?",
    ],
    "a+b+c": [
        "{name} walked num1 blocks to school , num2 blocks to the park and num3 blocks home . how many blocks did {name} walk ?",
    ],
    "a+b-c": [
        "a {trade} baked num1 {item} , baked num2 more in the afternoon and sold num3 . how many {item} are unsold ?",
        "{name} had $ num1 , was paid $ num2 and spent $ num3 . how much money does {name} have now ?",
    ],
    "a*(b+c)": [
        "a {trade} packs num1 hampers , each with num2 jars of jam and num3 jars of honey . how many jars are packed ?",
    ],
    "a*(b-c)": [
        "a {trade} works num1 days , printing num2 posters a day of which num3 are misprints . how many good posters are printed ?",
    ],
    "(a+b)/c": [
        "{name} pools num1 old {item} with num2 new ones and deals them to num3 players . how many {item} does each player get ?",
    ],
    "(a-b)/c": [
        "a {trade} picks num1 {item} , discards num2 bruised ones and boxes the rest in num3 equal boxes . how many {item} per box ?",
    ],
    "a-b-c": [
        "{name} had num1 {item} , lost num2 on the way and traded num3 away . how many {item} are left ?",
    ],
    "a/b+c": [
        "{name} splits num1 {item} among num2 cousins and then each cousin finds num3 more . how many {item} does each cousin end with ?",
    ],
    "a*b+c": [
        "a {trade} fills num1 sacks with num2 {item} each and keeps num3 loose ones . how many {item} are there in all ?",
    ],
    "a*b-c": [
        "a {trade} brews num1 pots of num2 cups each and spills num3 cups . how many cups are served ?",
    ],
    "a*b*c": [
        "a warehouse stores num1 pallets , each with num2 layers of num3 {item} . how many {item} are stored ?",
    ],
    "a*b/c": [
        "a {trade} prints num1 sheets with num2 {item} each and bundles them for num3 shops equally . how many {item} does each shop get ?",
        "{name} fills num1 folders with num2 {item} each and shares them across num3 desks . how many {item} land on each desk ?",
        "a {trade} harvests num1 rows of num2 {item} and sells them evenly at num3 stands . how many {item} go to each stand ?",
    ],
    "a/(b+c)": [
        "a {trade} divides num1 {item} among num2 adults and num3 children equally . how many {item} does each person get ?",
    ],
    "a/(b-c)": [
        "num1 {item} are shared by a group of num2 people after num3 leave . how many {item} does each remaining person get ?",
    ],
    "a*(b/c)": [
        "a cord of num2 meters is cut into num3 equal parts and {name} uses num1 parts . how many meters does {name} use ?",
    ],
    "a/b*c": [
        "{name} divides num1 {item} into num2 equal heaps and bags up num3 heaps . how many {item} are bagged ?",
    ],
}

AQUA_PATTERNS = {
    "a+b": [
        "the first machine at the {place} counts num1 {item} and the second counts num2 . what is the combined count ?",
    ],
    "a-b": [
        "a tank at the {place} holds num1 liters and num2 liters drain out . what volume is left in the tank ?",
        "what remains when num2 is subtracted from a stock of num1 {item} ?",
    ],
    "a*b": [
        "a fleet of num1 vans each carries num2 {item} . what is the total number of {item} carried ?",
        "what is the product of the num1 shelves and the num2 {item} stored on each shelf ?",
    ],
    "a/b": [
        "an investment of $ num1 made by {name} is split evenly across num2 accounts . what amount lands in each account ?",
        "what is each share when num1 {item} are divided equally among num2 members ?",
    ],
    "a+b+c": [
        "three meters at the {place} read num1 , num2 and num3 units . what is the total reading ?",
    ],
    "a+b-c": [
        "a register at the {place} starts at num1 , takes in num2 and pays out num3 . what does the register show ?",
        "{name} records num1 credits , adds num2 and deducts num3 . what is the final balance ?",
    ],
    "a*(b+c)": [
        "each of num1 kits packed by {name} contains num2 bolts and num3 screws . how many fasteners are in the kits ?",
        "num1 {container} each hold num2 plain {item} and num3 painted {item} . what is the total count ?",
    ],
    "a*(b-c)": [
        "num1 looms at the {place} each weave num2 rugs of which num3 are rejected . how many rugs pass inspection ?",
    ],
    "(a+b)/c": [
        "two bins of num1 and num2 {item} are merged and repacked into num3 equal lots . what is the size of a lot ?",
    ],
    "(a-b)/c": [
        "after num2 defective {item} are removed from num1 , the rest ship in num3 equal boxes . how many {item} per box ?",
    ],
    "a-b-c": [
        "a budget of num1 held by {name} covers a bill of num2 and a fee of num3 . what amount is left over ?",
    ],
    "a/b+c": [
        "num1 points are split evenly over num2 rounds and a bonus of num3 is granted per round by {name} . what is the score for one round ?",
    ],
    "a*b+c": [
        "what is the total when num3 spare {item} are added to num1 packs of num2 ?",
        "{name} counts num1 cases of num2 {item} plus num3 loose ones . what is the overall number ?",
    ],
    "a*b-c": [
        "num1 coils of num2 meters are produced at the {place} and num3 meters are trimmed off . what length remains ?",
    ],
    "a*b*c": [
        "a block of num1 by num2 by num3 unit cubes is assembled by {name} . how many unit cubes are used ?",
        "the {place} stores num1 racks of num2 trays with num3 {item} per tray . what is the total count ?",
    ],
    "a*b/c": [
        "num1 crates of num2 {item} are distributed equally to num3 stalls . how many {item} does each stall receive ?",
        "what is each share when num1 batches of num2 {item} are divided among num3 vendors ?",
    ],
    "a/(b+c)": [
        "a prize of num1 put up by {name} is divided equally among num2 winners and num3 runners-up . what does each person receive ?",
    ],
    "a/(b-c)": [
        "num1 {item} are allotted equally after num3 of the num2 applicants withdraw . how many {item} per applicant ?",
    ],
    "a*(b/c)": [
        "a rod of num2 cm is sawn into num3 equal segments and {name} welds num1 segments back . what length is welded ?",
    ],
    "a/b*c": [
        "num1 {item} are split into num2 equal loads and num3 loads are shipped . how many {item} are shipped ?",
    ],
}

# some reference templates bind text order differently from the expression;
# the first aqua template of these shapes does the same
AQUA_PERMUTED = {
    "a*b+c": (
        "num3+(num1*num2)",
        "a newcomer replaces a member weighing num3 kg while the average of num1 people at the {place} rises by num2 kg . what might the newcomer weigh ?",
    ),
}


def _vocab(rng: random.Random) -> dict[str, str]:
    name = rng.choice(NAMES)
    name2 = rng.choice([n for n in NAMES if n != name])
    return {
        "name": name,
        "name2": name2,
        "item": rng.choice(ITEMS),
        "container": rng.choice(CONTAINERS),
        "place": rng.choice(PLACES),
        "trade": rng.choice(TRADES),
    }


def build_templates() -> list:
    remainders = {s: TEMPLATE_TOTALS[s] - EXPERT_COUNTS.get(s, 0) for s in TEMPLATE_TOTALS}
    # split the non-expert remainder into gsm8k (155) and aqua (71) by largest
    # remainder so the totals come out exact
    total_rest = sum(remainders.values())
    aqua_share = 71
    quotas = {}
    fractions = []
    for shape, rest in sorted(remainders.items()):
        exact = Fraction(rest * aqua_share, total_rest)
        quotas[shape] = min(int(exact), rest)
        fractions.append((exact - int(exact), shape))
    deficit = aqua_share - sum(quotas.values())
    for _, shape in sorted(fractions, reverse=True):
        if deficit == 0:
            break
        if quotas[shape] < remainders[shape]:
            quotas[shape] += 1
            deficit -= 1
    assert sum(quotas.values()) == aqua_share

    templates = []
    counters = {"expert": 0, "gsm8k": 0, "aqua": 0}

    def emit(source: str, shape: str, count: int, patterns: dict, rng: random.Random) -> None:
        pool: list[tuple[str, str]] = [(p, EXPRESSIONS[shape]) for p in patterns[shape]]
        if source == "aqua" and shape in AQUA_PERMUTED:
            permuted_expr, permuted_pattern = AQUA_PERMUTED[shape]
            pool.insert(0, (permuted_pattern, permuted_expr))
        seen = set()
        made = 0
        cursor = 0
        guard = 0
        while made < count:
            guard += 1
            if guard > 100 * count + 100:
                raise RuntimeError(f"cannot make {count} distinct texts for {source}/{shape}")
            pattern, expression = pool[cursor % len(pool)]
            cursor += 1
            text = pattern.format(**_vocab(rng))
            if text in seen:
                continue
            seen.add(text)
            counters[source] += 1
            templates.append(
                make_template(
                    id=f"{source}-{counters[source]:04d}",
                    source=source,
                    text=text,
                    expression=expression,
                )
            )
            made += 1

    for shape in TEMPLATE_TOTALS:
        rng = random.Random(f"{MASTER_SEED}|templates|{shape}")
        expert = EXPERT_COUNTS.get(shape, 0)
        if expert:
            emit("expert", shape, expert, EXPERT_PATTERNS, rng)
        aqua = quotas[shape]
        gsm = remainders[shape] - aqua
        if gsm:
            emit("gsm8k", shape, gsm, GSM8K_PATTERNS, rng)
        if aqua:
            emit("aqua", shape, aqua, AQUA_PATTERNS, rng)
    return templates


# -- seed corpus ---------------------------------------------------------------

SEED_PATTERNS = {
    "a+b": [
        "num1 ducks were on the pond and num2 more landed. How many ducks are on the pond now?",
        "{name} planted num1 tulips and num2 sunflowers. How many flowers did {name} plant?",
        "The first bus carried num1 passengers and the second carried num2. How many passengers rode the buses?",
        "{name} solved num1 puzzles in March and num2 in April. How many puzzles did {name} solve in the two months?",
        "A choir has num1 singers and num2 new singers join. How many singers are in the choir now?",
    ],
    "a-b": [
        "num1 ants were marching and num2 turned back. How many ants kept marching?",
        "{name} wrote num1 invitations and mailed num2. How many invitations are still unmailed?",
        "A tray held num1 dumplings and num2 were eaten. How many dumplings are left on the tray?",
        "{name} charged a phone to num1 percent and it dropped by num2. What percent remains?",
        "num1 kites were flying and num2 were reeled in. How many kites are still flying?",
    ],
    "a*b": [
        "A garden has num1 beds with num2 lettuces in each bed. How many lettuces grow in the garden?",
        "{name} stacks num1 piles of num2 plates. How many plates are stacked?",
        "Each of num1 tables seats num2 guests. How many guests can be seated?",
        "A book has num1 chapters of num2 pages each. How many pages is the book?",
        "num1 spiders each spin num2 webs. How many webs are spun?",
    ],
    "a/b": [
        "num1 grapes are shared equally among num2 children. How many grapes does each child get?",
        "{name} deals num1 cards evenly to num2 players. How many cards does each player receive?",
        "A rope num1 meters long is cut into num2 equal pieces. How long is each piece?",
        "num1 cookies are boxed equally into num2 boxes. How many cookies go in each box?",
        "A nurse pours num1 milliliters into num2 equal doses. How big is one dose?",
    ],
    "a+b-c": [
        "num1 beetles sat on a log, num2 more crawled up and num3 flew off. How many beetles are on the log?",
        "{name} had num1 beads, bought num2 and used num3 for a bracelet. How many beads does {name} have left?",
        "A parking lot held num1 cars, num2 arrived and num3 drove away. How many cars are in the lot?",
        "{name} picked num1 plums, picked num2 more and gave num3 away. How many plums does {name} still have?",
        "A shelf had num1 mugs, num2 were added and num3 were sold. How many mugs are on the shelf?",
    ],
    "a*(b+c)": [
        "num1 scouts each carry num2 ropes and num3 torches. How many pieces of gear do they carry?",
        "{name} sews num1 costumes, each using num2 silver buttons and num3 gold buttons. How many buttons are used?",
        "Each of num1 baskets holds num2 pears and num3 quinces. How many fruits are in the baskets?",
        "num1 lunchboxes each pack num2 sandwiches and num3 rolls. How many baked items are packed?",
    ],
    "(a+b)/c": [
        "num1 red pins and num2 blue pins are shared equally by num3 tailors. How many pins does each tailor get?",
        "{name} merges num1 old photos with num2 new ones into num3 equal albums. How many photos fill each album?",
        "num1 walnuts and num2 almonds are mixed and split into num3 equal jars. How many nuts are in each jar?",
        "A club pools num1 tickets with num2 more and divides them among num3 members. How many tickets per member?",
    ],
    "a*(b-c)": [
        "num1 printers each load num2 sheets but jam on num3. How many sheets print cleanly?",
        "{name} waters num1 rows of num2 seedlings, though num3 per row wilt. How many seedlings thrive?",
        "Each of num1 ovens bakes num2 loaves with num3 burnt per oven. How many loaves are sold?",
        "num1 ferries each hold num2 seats with num3 left empty. How many seats are taken?",
    ],
    "(a-b)/c": [
        "Of num1 pumpkins, num2 are kept and the rest go equally to num3 stalls. How many pumpkins does each stall get?",
        "{name} trims num2 pages from a num1 page draft and binds the rest into num3 equal booklets. How many pages per booklet?",
        "After num2 of num1 balloons pop, the rest are tied into num3 equal bunches. How many balloons are in each bunch?",
        "A farm crates num1 eggs, sets num2 aside and splits the rest among num3 markets. How many eggs per market?",
    ],
}

SEED_NAMES = (
    "Ada Ben Cleo Dev Eli Fay Gus Hattie Iris Jude Kira Liam Mona Nils Opal "
    "Pia Rex Suki Tom Vera Willa Yusuf Zoe"
).split()


def _small_int(rng: random.Random, lo: int = 2, hi: int = 99) -> int:
    # skew towards one- and two-digit values like the reference corpus
    roll = rng.random()
    if roll < 0.95:
        return rng.randint(lo, hi)
    if roll < 0.99:
        return rng.randint(100, 999)
    return rng.randint(1000, 9999)


def _distinct_pair(rng: random.Random) -> tuple[int, int]:
    a = _small_int(rng)
    b = _small_int(rng)
    while b == a:
        b = _small_int(rng)
    return a, b


def _seed_numbers(shape: str, rng: random.Random) -> list[int]:
    if shape == "a+b":
        return list(_distinct_pair(rng))
    if shape == "a-b":
        a, b = _distinct_pair(rng)
        return [max(a, b), min(a, b)]
    if shape == "a*b":
        a = rng.randint(2, 99)
        b = rng.randint(2, 99)
        while b == a:
            b = rng.randint(2, 99)
        return [a, b]
    if shape == "a/b":
        b = rng.randint(2, 12)
        q = rng.randint(2, max(2, 99 // b))
        return [q * b, b]
    if shape == "a+b-c":
        a, b = _distinct_pair(rng)
        c = rng.randint(1, a + b)
        return [a, b, c]
    if shape == "a*(b+c)":
        a = rng.randint(2, 30)
        b = rng.randint(1, 99)
        c = rng.randint(1, 99)
        while c == b:
            c = rng.randint(1, 99)
        return [a, b, c]
    if shape == "(a+b)/c":
        c = rng.randint(2, 12)
        q = rng.randint(2, 12)
        total = q * c
        a = rng.randint(1, total - 1)
        while 2 * a == total:
            a = rng.randint(1, total - 1)
        return [a, total - a, c]
    if shape == "a*(b-c)":
        a = rng.randint(2, 30)
        b = rng.randint(3, 99)
        c = rng.randint(1, b - 1)
        return [a, b, c]
    if shape == "(a-b)/c":
        c = rng.randint(2, 12)
        q = rng.randint(1, 12)
        b = _small_int(rng)
        return [q * c + b, b, c]
    raise ValueError(shape)


def build_seeds() -> list[SeedInstance]:
    drafts = []
    for shape, total in SEED_TOTALS.items():
        rng = random.Random(f"{MASTER_SEED}|seeds|{shape}")
        patterns = SEED_PATTERNS[shape]
        seen_texts = set()
        made = 0
        guard = 0
        while made < total:
            guard += 1
            if guard > 100 * total:
                raise RuntimeError(f"cannot build {total} distinct seeds for {shape}")
            pattern = patterns[made % len(patterns)]
            numbers = _seed_numbers(shape, rng)
            vocab = {"name": rng.choice(SEED_NAMES)}
            text = pattern.format(**vocab)
            literals = {i + 1: NumberLiteral(str(n)) for i, n in enumerate(numbers)}
            question, placed = _substitute(text, literals)
            if question in seen_texts:
                continue
            seen_texts.add(question)
            expression = parse_expression(EXPRESSIONS[shape])
            answer = evaluate(expression, literals)
            drafts.append((shape, question, placed, expression, answer))
            made += 1
    order_rng = random.Random(f"{MASTER_SEED}|seeds|order")
    order_rng.shuffle(drafts)
    seeds = []
    for idx, (shape, question, placed, expression, answer) in enumerate(drafts, start=1):
        seeds.append(
            SeedInstance(
                id=f"s{idx:04d}",
                question=question,
                numbers=placed,
                expression=expression,
                answer=answer,
            )
        )
    return seeds


def _substitute(text: str, literals: dict[int, NumberLiteral]) -> tuple[str, tuple]:
    import re

    pieces = []
    placed = []
    cursor = 0
    for match in re.finditer(r"\bnum(\d+)\b", text):
        slot = int(match.group(1))
        surface = render(literals[slot])
        pieces.append(text[cursor:match.start()])
        start = sum(len(p) for p in pieces)
        pieces.append(surface)
        placed.append(PlacedNumber(literals[slot], start, start + len(surface), slot))
        cursor = match.end()
    pieces.append(text[cursor:])
    placed.sort(key=lambda p: p.slot)
    return "".join(pieces), tuple(placed)


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    templates = build_templates()
    inv = inventory(templates)
    assert inv.total == 326, inv.total
    assert inv.by_source == {"aqua": 71, "expert": 100, "gsm8k": 155}, inv.by_source
    assert inv.by_signature == dict(sorted(TEMPLATE_TOTALS.items())), inv.by_signature
    write_file(
        OUT_DIR / "templates.jsonl",
        (template_to_record(t) for t in templates),
        RunConfig(command="build-reference-data/templates", seed=MASTER_SEED),
    )

    seeds = build_seeds()
    report = validate_seed_corpus(seeds)
    assert report.total == 1111, report.total
    assert report.signature_counts == dict(sorted(SEED_TOTALS.items())), report.signature_counts
    assert report.hop_counts == {1: 531, 2: 580}, report.hop_counts

    # every aspect except commuted must cover all 1,111 seeds
    suite = expand_suite(seeds, seed=0)
    for aspect, count in suite.counts.items():
        if aspect == "commuted":
            assert 531 <= count <= 747, count
            print(f"commuted coverage: {count}")
        else:
            assert count == 1111, (aspect, count)

    write_file(
        OUT_DIR / "seeds.jsonl",
        (seed_to_record(s) for s in seeds),
        RunConfig(command="build-reference-data/seeds", seed=MASTER_SEED),
    )
    print(f"wrote {inv.total} templates and {report.total} seeds to {OUT_DIR}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
