#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 revhawk Contributors
"""Regenerates resources/lemmas.tsv (inflected form -> lemma).

The lexicon is built from base-form word lists plus English inflection rules
and irregular tables. Base forms are never emitted as keys, so every lemma is
a fixed point of the mapping.
"""

import sys
from pathlib import Path

VERBS = """
accept add admire adore advise afford agree allow annoy answer appear apply
arrive ask assemble attach attempt avoid bake bathe behave believe belong
blame boil book borrow bother bounce break breathe brush burn buy call
calm care carry cause change charge chat check cheer chew choose clean
clear click climb close collect comb come compare complain complete connect
consider contain continue cook cool cost count cover crack crash crave
cry cut damage dance decide decorate deliver deny depend describe deserve
design destroy develop die disappear disappoint discover dislike display
do download drain draw dream dress drink drive drop dry earn eat
educate empty enjoy enter escape expect explain fade fail fall fasten
feed feel fetch fill find finish fit fix float flow fly fold follow
forget forgive freeze frighten fry get give glow glue go grab grate
grease grin grip grow guarantee guard guess guide hammer hand handle hang
happen hate have heal hear heat help hide hit hold hook hope hug
hum hurry hurt identify ignore imagine impress improve include increase
inform inject install intend introduce invent invite itch jog join joke judge
juggle jump keep kick kill kiss kneel knit knock know label land last
laugh launch lead learn leave lend lick lie lift light like limit
list listen live load lock look lose love maintain make manage mark
match matter mean measure meet melt memorize mend mention mind miss mix
move multiply need nod note notice number obey object observe obtain offer
open operate order organize overflow owe own pack paint park pass
pause pay peel perform pick place plan plant play please plug point
polish pop possess post pour practice praise pray prefer prepare present
press pretend prevent print produce promise protect provide pull pump punch
purchase push put rain raise reach read realize receive recommend record
reduce reflect refuse regret reject relax release remain remember remind
remove repair repeat replace reply report request require rescue respond
rest return review rinse rob rock rub ruin rule run rush save
say scare scratch scream search see sell send serve settle set
sew shake shave shine ship shock shop shout show shrink shut sing
sink sit ski sleep slide slip smash smell smile smoke snap sneeze
sniff snow soak solve sort sound spare speak spell spend spill spoil
spray spread squeeze stain stand stare start stay steal step stick
sting stir stop store strap stretch strip stuff subtract succeed suck
suffer suggest suit supply support suppose surprise surround suspect swear
sweat swim swing switch take talk taste teach tear tell tempt test
thank think throw tick tickle tie time tip tire touch tour tow
trace trade train transport trap travel treat tremble trick trip trust
try turn twist type understand undress unfasten unite unlock unpack use
vanish visit wait walk wander want warm warn wash waste watch water
wave wear weigh welcome whip whisper win wink wish wobble wonder work
worry wrap wreck wrestle write yawn yell zip zoom
""".split()

NOUNS = """
accessory adapter address advantage amount animal answer apartment app
apple area arm article attitude baby back bag ball banana band bank
bar base basket bath battery beach bean bear bed bedroom bee beer
bell belt bench berry bike bill bird birthday blade blanket block
blog blouse board boat body bone book boot bottle bottom bowl box boy
brand bread breakfast brick bridge brother brush bubble bucket budget bug
building bulb bus business button buyer cabinet cable cake camera camp
candle cap car card case cash cat chair chance change channel charger
cheese chicken child chip chocolate choice city class cleaner client clock
cloth coat coffee color company computer condition container cookie
corner couch country couple course cover cream credit cup curtain
customer cushion cycle dad date daughter day deal decision delivery desk
detail device diaper difference dinner dish dog dollar door dress
drink driver drop drawer ear earring edge effect egg engine error
event experience eye fabric face fact family fan farm feature fee
field file film finger fire fish flavor floor flower fly food foot
fork frame friend fruit function game garden gift girl glass glove
goal gown grade guest guitar guy hair half hand handle hat head
headphone heel hole holiday home hook horse hose hotel hour house
husband idea inch ingredient instruction issue item jacket jar jean job
juice key keyboard kid kitchen knife lady lamp laptop layer leaf leg
lens lesson letter level lid life light line lip list lock look
machine magazine man manual market match material meal member memory
menu message method minute mirror mistake model mom moment money month
morning mother motor mouse movie mug muscle nail name neck necklace
needle night noise nose note number nurse nut office oil option
orange order outfit oven owner pad page pair pan pant paper parent
part party pattern pen pencil person pet phone photo piece pillow
pin pizza place plan plant plastic plate player pocket point pot
pound price problem product program project purse quality question rack
rating reason recipe refund remote result review ring road rock room
rope rug rule sale salt sample sandal sauce scarf school screen screw
seat second seller service set shape sheet shelf shipment shirt shoe
shop shoulder side sign sister site size skin skirt sleeve slipper
smell snack sock sofa son song sound soup space speaker spoon spot
star step stick stone store story strap street student style sugar
suit summer surface sweater switch table tablet tag tank tape task
taste tea teacher team thing ticket tie time tip tire toe tool
tooth top towel toy track trip truck tube tv type umbrella unit
user vacuum value vendor version video wall wallet watch water wave
way website week weekend weight wheel wife window wine wire woman
word work worker year yard zipper
""".split()

ADJECTIVES = """
bad big black blue bold brave bright broad busy calm cheap clean
clear close cold cool cute dark deep dirty dry dull early easy
fair fancy fast fat few fine firm flat fresh friendly full funny
gentle good great green happy hard healthy heavy high hot huge
kind large late lazy light long loose loud lovely low lucky mad
mild narrow near neat new nice noisy old pale plain polite poor
pretty proud pure quick quiet rare raw rich rough round rude sad
safe shallow sharp short shy silly simple slim slow small smart
smooth soft solid sour steep strange strict strong sturdy sweet tall
thick thin tight tiny tough ugly warm weak wet wide wild wise
young
""".split()

IRREGULAR_VERBS = {
    "be": ["am", "is", "are", "was", "were", "been", "being"],
    "have": ["has", "had", "having"],
    "do": ["does", "did", "done", "doing"],
    "go": ["goes", "went", "gone", "going"],
    "break": ["broke", "broken"], "buy": ["bought"], "choose": ["chose", "chosen"],
    "come": ["came"], "cut": ["cutting"], "draw": ["drew", "drawn"],
    "dream": ["dreamt"], "drink": ["drank", "drunk"], "drive": ["drove", "driven"],
    "eat": ["ate", "eaten"], "fall": ["fell", "fallen"], "feed": ["fed"],
    "feel": ["felt"], "find": ["found"], "fly": ["flew", "flown"],
    "forget": ["forgot", "forgotten"], "forgive": ["forgave", "forgiven"],
    "freeze": ["froze", "frozen"], "get": ["got", "gotten"], "give": ["gave", "given"],
    "grow": ["grew", "grown"], "hang": ["hung"], "hear": ["heard"], "hide": ["hid", "hidden"],
    "hold": ["held"], "hurt": ["hurting"], "keep": ["kept"], "kneel": ["knelt"],
    "know": ["knew", "known"], "lead": ["led"], "leave": ["left"], "lend": ["lent"],
    "lie": ["lay", "lain", "lying"], "lose": ["lost"], "make": ["made"], "mean": ["meant"],
    "meet": ["met"], "pay": ["paid"], "put": ["putting"], "read": ["reading"],
    "ride": ["rode", "ridden"], "ring": ["rang", "rung"], "rise": ["rose", "risen"],
    "run": ["ran"], "say": ["said"], "see": ["saw", "seen"], "sell": ["sold"],
    "send": ["sent"], "set": ["setting"], "sew": ["sewn"], "shake": ["shook", "shaken"],
    "shine": ["shone"], "shrink": ["shrank", "shrunk"], "shut": ["shutting"],
    "sing": ["sang", "sung"], "sink": ["sank", "sunk"], "sit": ["sat"],
    "sleep": ["slept"], "slide": ["slid"], "speak": ["spoke", "spoken"],
    "spend": ["spent"], "spread": ["spreading"], "stand": ["stood"],
    "steal": ["stole", "stolen"], "stick": ["stuck"], "sting": ["stung"],
    "swear": ["swore", "sworn"], "swim": ["swam", "swum"], "swing": ["swung"],
    "take": ["took", "taken"], "teach": ["taught"], "tear": ["tore", "torn"],
    "tell": ["told"], "think": ["thought"], "throw": ["threw", "thrown"],
    "understand": ["understood"], "wear": ["wore", "worn"], "win": ["won"],
    "write": ["wrote", "written"], "build": ["built"], "bring": ["brought"],
    "catch": ["caught"], "fight": ["fought"], "seek": ["sought"], "begin": ["began", "begun"],
}

IRREGULAR_NOUNS = {
    "child": ["children"], "man": ["men"], "woman": ["women"], "foot": ["feet"],
    "tooth": ["teeth"], "mouse": ["mice"], "knife": ["knives"], "life": ["lives"],
    "wife": ["wives"], "leaf": ["leaves"], "shelf": ["shelves"], "half": ["halves"],
    "person": ["persons"], "scarf": ["scarves"],
}

IRREGULAR_ADJECTIVES = {
    "good": ["better", "best"],
    "bad": ["worse", "worst"],
    "far": ["farther", "farthest", "further", "furthest"],
    "little": ["less", "least"],
}

DOUBLING = set("""
chat chop clap drip drop grab grin grip hug hum jog knit mop nod plan plug
pop rob rub run scrub ship shop sit skip slip snap spin spit stir stop
strap strip swim tip trap trip whip win wrap zip begin forget regret
big fat hot mad sad slim thin wet
""".split())

VOWELS = set("aeiou")


def third_person(v):
    if v.endswith(("s", "x", "z", "ch", "sh", "o")):
        return v + "es"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ies"
    return v + "s"


def past(v):
    if v in DOUBLING:
        return v + v[-1] + "ed"
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ied"
    return v + "ed"


def gerund(v):
    if v in DOUBLING:
        return v + v[-1] + "ing"
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")):
        return v[:-1] + "ing"
    return v + "ing"


def plural(n):
    if n.endswith(("s", "x", "z", "ch", "sh")):
        return n + "es"
    if n.endswith("y") and n[-2] not in VOWELS:
        return n[:-1] + "ies"
    return n + "s"


def comparatives(a):
    if a in DOUBLING:
        stem = a + a[-1]
    elif a.endswith("y") and a[-2] not in VOWELS:
        stem = a[:-1] + "i"
    elif a.endswith("e"):
        stem = a[:-1]
    else:
        stem = a
    return [stem + "er", stem + "est"]


def main(out_path):
    bases = set(VERBS) | set(NOUNS) | set(ADJECTIVES)
    bases |= set(IRREGULAR_VERBS) | set(IRREGULAR_NOUNS) | set(IRREGULAR_ADJECTIVES)
    table = {}

    def put(form, lemma):
        if form == lemma or form in bases or form in table:
            return
        table[form] = lemma

    for lemma, forms in IRREGULAR_ADJECTIVES.items():
        for f in forms:
            put(f, lemma)
    for lemma, forms in IRREGULAR_VERBS.items():
        for f in forms:
            put(f, lemma)
    for lemma, forms in IRREGULAR_NOUNS.items():
        for f in forms:
            put(f, lemma)
    for v in VERBS:
        for f in (third_person(v), past(v), gerund(v)):
            put(f, v)
    for n in NOUNS:
        put(plural(n), n)
    for a in ADJECTIVES:
        if a in IRREGULAR_ADJECTIVES:
            continue
        for f in comparatives(a):
            put(f, a)

    assert all(v not in table for v in table.values()), "lemma must be a fixed point"
    lines = ["# inflected form\tlemma (generated by tools/build_lemma_lexicon.py)"]
    lines += [f"{k}\t{table[k]}" for k in sorted(table)]
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(table)} entries to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "resources/lemmas.tsv")
