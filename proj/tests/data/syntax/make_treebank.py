"""Writes gold.conllu (30 hand-parsed sentences) plus part_a/part_b halves.

Token spec: form lemma upos xpos head deprel [feats]. Sentences 21-23 use
the older spaCy label set with unset xpos/feats.
"""

SENTENCES = [
    ("s01", """Walk walk VERB VB 0 root Mood=Imp|VerbForm=Fin
through through ADP IN 4 case
the the DET DT 4 det
door door NOUN NN 1 obl
. . PUNCT . 1 punct"""),
    ("s02", """You you PRON PRP 3 nsubj
can can AUX MD 3 aux
sit sit VERB VB 0 root VerbForm=Inf
here here ADV RB 3 advmod
. . PUNCT . 3 punct"""),
    ("s03", """Open open VERB VB 0 root
the the DET DT 3 det
window window NOUN NN 1 obj
to to PART TO 5 mark
let let VERB VB 1 advcl
air air NOUN NN 5 obj
in in ADP RP 5 compound:prt
. . PUNCT . 1 punct"""),
    ("s04", """There there PRON EX 2 expl
is be VERB VBZ 0 root
a a DET DT 4 det
chair chair NOUN NN 2 nsubj
to to PART TO 6 mark
sit sit VERB VB 4 acl
on on ADV RB 6 advmod
. . PUNCT . 2 punct"""),
    ("s05", """The the DET DT 2 det
bench bench NOUN NN 5 nsubj
is be AUX VBZ 5 cop
for for SCONJ IN 5 mark
sitting sit VERB VBG 0 root VerbForm=Ger
. . PUNCT . 5 punct"""),
    ("s06", """Could could AUX MD 3 aux
you you PRON PRP 3 nsubj
climb climb VERB VB 0 root
the the DET DT 5 det
stairs stair NOUN NNS 3 obj
? ? PUNCT . 3 punct"""),
    ("s07", """Climb climb VERB VB 0 root
up up ADP IN 4 case
the the DET DT 4 det
ladder ladder NOUN NN 1 obl
. . PUNCT . 1 punct"""),
    ("s08", """Please please INTJ UH 2 discourse
sit sit VERB VB 0 root
down down ADV RP 2 compound:prt
on on ADP IN 6 case
the the DET DT 6 det
sofa sofa NOUN NN 2 obl
. . PUNCT . 2 punct"""),
    ("s09", """The the DET DT 2 det
walk walk NOUN NN 7 nsubj
to to ADP IN 5 case
the the DET DT 5 det
park park NOUN NN 2 nmod
is be AUX VBZ 7 cop
short short ADJ JJ 0 root
. . PUNCT . 7 punct"""),
    ("s10", """You you PRON PRP 3 nsubj
should should AUX MD 3 aux
use use VERB VB 0 root
the the DET DT 5 det
handrail handrail NOUN NN 3 obj
. . PUNCT . 3 punct"""),
    ("s11", """Your you PRON PRP$ 2 nmod:poss
bag bag NOUN NN 4 nsubj
can can AUX MD 4 aux
rest rest VERB VB 0 root
on on ADP IN 7 case
the the DET DT 7 det
shelf shelf NOUN NN 4 obl
. . PUNCT . 4 punct"""),
    ("s12", """Go go VERB VB 0 root
past past ADP IN 4 case
the the DET DT 4 det
fountain fountain NOUN NN 1 obl
and and CCONJ CC 6 cc
turn turn VERB VB 1 conj
left left ADV RB 6 advmod
. . PUNCT . 1 punct"""),
    ("s13", """Lean lean VERB VB 0 root
the the DET DT 3 det
ladder ladder NOUN NN 1 obj
against against ADP IN 6 case
the the DET DT 6 det
wall wall NOUN NN 1 obl
. . PUNCT . 1 punct"""),
    ("s14", """The the DET DT 2 det
key key NOUN NN 4 nsubj:pass
is be AUX VBZ 4 aux:pass
used use VERB VBN 0 root
to to PART TO 6 mark
open open VERB VB 4 advcl
the the DET DT 8 det
gate gate NOUN NN 6 obj
. . PUNCT . 4 punct"""),
    ("s15", """Reach reach VERB VB 0 root
into into ADP IN 4 case
the the DET DT 4 det
box box NOUN NN 1 obl
for for ADP IN 7 case
the the DET DT 7 det
keys key NOUN NNS 1 obl
. . PUNCT . 1 punct"""),
    ("s16", """A a DET DT 2 det
ladder ladder NOUN NN 5 nsubj
for for SCONJ IN 4 mark
climbing climb VERB VBG 2 acl VerbForm=Ger
stands stand VERB VBZ 0 root
near near ADP IN 8 case
the the DET DT 8 det
shed shed NOUN NN 5 obl
. . PUNCT . 5 punct"""),
    ("s17", """The the DET DT 2 det
door door NOUN NN 3 nsubj
opens open VERB VBZ 0 root
into into ADP IN 6 case
a a DET DT 6 det
garden garden NOUN NN 3 obl
. . PUNCT . 3 punct"""),
    ("s18", """An a DET DT 3 det
open open ADJ JJ 3 amod
door door NOUN NN 4 nsubj
leads lead VERB VBZ 0 root
to to ADP IN 7 case
the the DET DT 7 det
hall hall NOUN NN 4 obl
. . PUNCT . 4 punct"""),
    ("s19", """Step step VERB VB 0 root
over over ADP IN 4 case
the the DET DT 4 det
cables cable NOUN NNS 1 obl
carefully carefully ADV RB 1 advmod
. . PUNCT . 1 punct"""),
    ("s20", """Will will AUX MD 3 aux
you you PRON PRP 3 nsubj
hold hold VERB VB 0 root
the the DET DT 5 det
door door NOUN NN 3 obj
? ? PUNCT . 3 punct"""),
    ("s21", """Hold hold VERB _ 0 ROOT
the the DET _ 3 det
rail rail NOUN _ 1 dobj
. . PUNCT _ 1 punct"""),
    ("s22", """Walk walk VERB _ 0 ROOT
toward toward ADP _ 1 prep
the the DET _ 4 det
light light NOUN _ 2 pobj
to to PART _ 6 aux
find find VERB _ 1 advcl
the the DET _ 8 det
exit exit NOUN _ 6 dobj
. . PUNCT _ 1 punct"""),
    ("s23", """It it PRON _ 2 nsubj
is be AUX _ 0 ROOT
good good ADJ _ 2 acomp
for for ADP _ 3 prep
resting rest VERB _ 4 pcomp
. . PUNCT _ 2 punct"""),
    ("s24", """Turn turn VERB VB 0 root
the the DET DT 3 det
handle handle NOUN NN 1 obj
and and CCONJ CC 5 cc
push push VERB VB 1 conj
. . PUNCT . 1 punct"""),
    ("s25", """People people NOUN NNS 2 nsubj
cross cross VERB VBP 0 root
the the DET DT 4 det
street street NOUN NN 2 obj
here here ADV RB 2 advmod
. . PUNCT . 2 punct"""),
    ("s26", """You you PRON PRP 3 nsubj
might might AUX MD 3 aux
want want VERB VB 0 root
to to PART TO 5 mark
lie lie VERB VB 3 xcomp
down down ADV RP 5 compound:prt
. . PUNCT . 3 punct"""),
    ("s27", """Enter enter VERB VB 0 root
through through ADP IN 5 case
the the DET DT 5 det
side side NOUN NN 5 compound
door door NOUN NN 1 obl
, , PUNCT , 8 punct
then then ADV RB 8 advmod
go go VERB VB 1 conj
up up ADP IN 11 case
the the DET DT 11 det
stairs stair NOUN NNS 8 obl
. . PUNCT . 1 punct"""),
    ("s28", """Is be AUX VBZ 3 cop
it it PRON PRP 3 expl
safe safe ADJ JJ 0 root
to to PART TO 5 mark
walk walk VERB VB 3 csubj
here here ADV RB 5 advmod
? ? PUNCT . 3 punct"""),
    ("s29", """The the DET DT 3 det
grab grab NOUN NN 3 compound
bar bar NOUN NN 4 nsubj
helps help VERB VBZ 0 root
you you PRON PRP 4 obj
stand stand VERB VB 4 xcomp
up up ADP RP 6 compound:prt
. . PUNCT . 4 punct"""),
    ("s30", """Cross cross VERB VB 0 root
the the DET DT 3 det
bridge bridge NOUN NN 1 obj
to to PART TO 5 mark
reach reach VERB VB 1 advcl
the the DET DT 8 det
other other ADJ JJ 8 amod
side side NOUN NN 5 obj
, , PUNCT , 11 punct
and and CCONJ CC 11 cc
rest rest VERB VB 1 conj
under under ADP IN 14 case
the the DET DT 14 det
tree tree NOUN NN 11 obl
. . PUNCT . 1 punct"""),
]


def render(sid, spec):
    rows = [line.split() for line in spec.splitlines()]
    text = " ".join(r[0] for r in rows)
    out = [f"# sent_id = {sid}", f"# text = {text}"]
    for i, r in enumerate(rows, 1):
        form, lemma, upos, xpos, head, rel = r[:6]
        feats = r[6] if len(r) > 6 else "_"
        out.append("\t".join([str(i), form, lemma, upos, xpos, feats, head, rel, "_", "_"]))
    return "\n".join(out) + "\n\n"


def roundtrip_block(k):
    """Variant of a gold sentence carrying multiword, empty-node and MISC lines."""
    sid, spec = SENTENCES[k % len(SENTENCES)]
    lines = render(f"rt{k:03d}", spec).rstrip("\n").split("\n")
    body = lines[2:]
    if k % 4 == 0:
        body = [line[:-1] + "SpaceAfter=No" if line.split("\t")[1] not in ".?," and
                body[i + 1].split("\t")[1] in ".?," else line
                for i, line in enumerate(body[:-1])] + body[-1:]
    if k % 7 == 0:
        first = body[0].split("\t")
        body.insert(0, "\t".join(["1-2", first[1] + "'s", "_", "_", "_", "_", "_", "_", "_", "_"]))
    if k % 11 == 0:
        body.insert(len(body) - 1, "\t".join(["%d.1" % (sum(line.split("\t")[0].isdigit() for line in body) - 1), "ghost", "ghost", "NOUN",
                                             "NN", "_", "_", "_", "1:dep", "_"]))
    extra = [f"# source = variant of {sid}"] if k % 3 == 0 else []
    return "\n".join(lines[:2] + extra + body) + "\n\n"


def main():
    blocks = [render(sid, spec) for sid, spec in SENTENCES]
    with open("gold.conllu", "w") as f:
        f.write("".join(blocks))
    with open("part_a.conllu", "w") as f:
        f.write("".join(blocks[:15]))
    with open("part_b.conllu", "w") as f:
        f.write("".join(blocks[15:]))
    with open("roundtrip100.conllu", "w") as f:
        f.write("".join(roundtrip_block(k) for k in range(100)))


if __name__ == "__main__":
    main()
