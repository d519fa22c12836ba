#!/usr/bin/env python3
"""Regenerates crates/core/data/legal_abbreviations.csv.

The dictionary is assembled from public reporter, court, statute, and
citation-manual abbreviation conventions: curated base lists expanded with
the standard jurisdiction/series combinations (state reporters, appellate
series, federal district compacts, journal forms). Output is deterministic
and sorted so regeneration is reproducible.
"""

import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates/core/data/legal_abbreviations.csv"

entries = {}  # abbr (original case) -> category


def add(abbr, cat):
    assert abbr and not any(c.isspace() for c in abbr), repr(abbr)
    entries.setdefault(abbr, cat)


def add_all(items, cat):
    for a in items:
        add(a, cat)


STATES = [
    "Ala.", "Ariz.", "Ark.", "Cal.", "Colo.", "Conn.", "Del.", "Fla.", "Ga.",
    "Haw.", "Ill.", "Ind.", "Kan.", "Ky.", "La.", "Me.", "Md.", "Mass.",
    "Mich.", "Minn.", "Miss.", "Mo.", "Mont.", "Neb.", "Nev.", "N.H.",
    "N.J.", "N.M.", "N.Y.", "N.C.", "N.D.", "Okla.", "Or.", "Pa.", "R.I.",
    "S.C.", "S.D.", "Tenn.", "Tex.", "Vt.", "Va.", "Wash.", "W.Va.", "Wis.", "Wyo.",
    "D.C.", "P.R.", "V.I.",
]

# --- federal reporters and related citation tokens -------------------------
add_all([
    "U.S.", "S.Ct.", "L.Ed.", "L.Ed.2d", "F.", "F.2d", "F.3d", "F.4th",
    "F.Supp.", "F.Supp.2d", "F.Supp.3d", "F.App'x", "Fed.App'x", "F.R.D.",
    "B.R.", "Fed.Cl.", "Cl.Ct.", "Ct.Cl.", "T.C.", "B.T.A.", "C.C.P.A.",
    "M.J.", "Vet.App.", "Fed.Cir.", "A.", "A.2d", "A.3d", "P.", "P.2d",
    "P.3d", "N.E.", "N.E.2d", "N.E.3d", "N.W.", "N.W.2d", "S.E.", "S.E.2d",
    "S.W.", "S.W.2d", "S.W.3d", "So.", "So.2d", "So.3d", "N.Y.S.",
    "N.Y.S.2d", "N.Y.S.3d", "Cal.Rptr.", "Cal.Rptr.2d", "Cal.Rptr.3d",
], "reporter")

# State reporter series and appellate divisions.
for st in STATES:
    for suf in ["2d", "3d", "4th", "5th", "App.", "App.2d", "App.3d",
                "App.4th", "Ct.App.", "Super.", "Sup.Ct.", "Civ.App.",
                "Crim.App.", "St.", "St.2d", "St.3d", "Misc.", "Misc.2d",
                "Rptr.", "Rptr.2d", "Rptr.3d", "B.J."]:
        add(st + suf, "reporter")

# --- statutes and codes ----------------------------------------------------
add_all([
    "U.S.C.", "U.S.C.A.", "U.S.C.S.", "C.F.R.", "Fed.Reg.", "Stat.",
    "Pub.L.", "Priv.L.", "Sess.", "Leg.", "Legis.", "Ord.", "Const.",
    "Amend.", "Art.", "Arts.", "Cl.", "Cls.", "Pmbl.", "Tit.", "Sec.",
    "Secs.", "Sec'y.", "Subsec.", "Subd.", "Para.", "Paras.", "Reg.",
    "Regs.", "Rul.", "Ruls.", "Proc.", "Enf't.", "Exec.",
], "statute")

for st in STATES:
    for suf in ["Code", "CodeAnn.", "Gen.Stat.", "Rev.Stat.", "Comp.Laws",
                "Stat.", "Stat.Ann.", "Laws", "Admin.Code", "Reg.",
                "Const.", "Sess.Laws", "Gen.Laws", "Pub.Acts", "Acts"]:
        add(st + suf, "statute")

# --- courts ----------------------------------------------------------------
add_all([
    "Ct.", "Cts.", "Cir.", "App.", "Div.", "Dist.", "Jud.", "J.", "JJ.",
    "C.J.", "Mag.", "Magis.", "Comm'n.", "Comm'r.", "Arb.", "Bankr.",
    "Sup.", "Super.", "Mun.", "Fam.", "Juv.", "Crim.", "Civ.", "Terr.",
    "Trib.", "Admin.", "Bd.", "Dep't.", "Off.", "Ref.", "Tr.", "Trs.",
    "Cnty.", "Twp.", "Vill.", "Pro.Tem.",
], "court")

# Federal district court compacts: "S.D.N.Y.", "N.D.Cal.", ...
for d in ["D.", "N.D.", "S.D.", "E.D.", "W.D.", "C.D.", "M.D."]:
    for st in STATES:
        add(d + st, "court")

# State court compacts.
for st in STATES:
    for suf in ["Dist.Ct.", "Cir.Ct.", "Fam.Ct.", "Juv.Ct.", "Prob.Ct.",
                "Mun.Ct."]:
        add(st + suf, "court")

# --- latin and procedural --------------------------------------------------
add_all([
    "v.", "vs.", "e.g.", "i.e.", "etc.", "et.", "al.", "cf.", "id.",
    "ibid.", "supra.", "infra.", "ex.", "orig.", "viz.", "sc.", "c.",
    "ca.", "q.v.", "s.v.", "n.b.", "seq.", "pro.", "ad.", "arg.",
    "a.m.", "p.m.", "q.e.d.", "ult.", "sci.fa.", "cap.", "fort.",
    "aff'd.", "aff'g.", "rev'd.", "rev'g.", "reh'g.", "cert.", "pet.",
    "mot.", "mem.", "op.", "dismiss'd.", "vac'd.", "remand'd.",
], "latin")

# --- corporate -------------------------------------------------------------
add_all([
    "Inc.", "Corp.", "Co.", "Cos.", "Ltd.", "L.L.C.", "LLC.", "L.L.P.",
    "LLP.", "L.P.", "P.C.", "P.A.", "S.A.", "N.A.", "A.G.", "S.p.A.",
    "GmbH.", "Bros.", "Assoc.", "Assocs.", "Ass'n.", "Ass'ns.", "Mfg.",
    "Mfrs.", "Indus.", "Int'l.", "Nat'l.", "Inv.", "Invs.", "Hldgs.",
    "Grp.", "Tech.", "Sys.", "Svcs.", "Fin.", "Ins.", "Sav.", "Bhd.",
    "Coop.", "P'ship.", "Pharm.", "Mkts.", "Res.", "Dev.",
], "corporate")

# --- citation-manual word abbreviations (case names, institutions) ---------
T6_WORDS = [
    "Acad.", "Evid.", "Fed.", "Rptr.", "Gen.", "U.S.A.", "Admin.", "Admr.", "Advert.", "Advoc.", "Aff.", "Agric.",
    "Alt.", "Am.", "Ann.", "Arb.", "Auth.", "Auto.", "Ave.", "Bail.",
    "Bankr.", "Bhvr.", "Bldg.", "Blvd.", "Br.", "Brd.", "Bus.",
    "Cas.", "Cath.", "Cemt.", "Cent.", "Chem.", "Chm.", "Chron.", "Coll.",
    "Com.", "Comm.", "Commc'n.", "Cmty.", "Comp.", "Cond.", "Conf.",
    "Cong.", "Consol.", "Constr.", "Cont.", "Conv.", "Coord.", "Corr.",
    "Cosm.", "Couns.", "Cred.", "Dec.", "Decl.", "Def.", "Delinq.",
    "Dem.", "Det.", "Disc.", "Disp.", "Distrib.", "Doc.", "Econ.",
    "Edit.", "Educ.", "Elec.", "Emp.", "Eng'g.", "Enter.", "Envtl.",
    "Equip.", "Est.", "Exam'r.", "Exch.", "Expl.",
    "Fed'n.", "Fid.", "Found.", "Gov't.", "Guar.", "Hosp.", "Hous.",
    "Improv.", "Indem.", "Indep.", "Info.", "Inst.", "Instr.",
    "Intell.", "Irrig.", "Liab.", "Libr.", "Litig.",
    "Loc.", "Mach.", "Maint.", "Mgmt.", "Mkt.", "Mktg.", "Med.", "Merch.",
    "Metro.", "Mortg.", "Mot.", "Mut.", "Nav.", "Negot.", "No.", "Nos.",
    "Obs.", "Opp'n.", "Org.", "Orig.", "Pac.", "Pat.", "Pers.",
    "Pet'r.", "Phil.", "Pol'y.", "Prac.", "Pres.", "Prob.",
    "Prod.", "Prof'l.", "Prop.", "Prot.", "Pub.", "Publ'g.", "Ry.",
    "Rd.", "Rec.", "Refin.", "Rehab.", "Rel.", "Rep.", "Reprod.",
    "Resol.", "Resp't.", "Ret.", "Rev.", "Rts.", "Sch.", "Sci.",
    "Scot.", "Sec.", "Serv.", "Soc.", "Soc'y.", "Sol.", "Sta.", "Stud.", "Subcomm.", "Sur.", "Surg.", "Surv.", "Symp.", "Teach.",
    "Tel.", "Telecomm.", "Teleph.", "Temp.", "Tpk.", "Transcon.",
    "Transp.", "Tunn.", "Unif.", "Univ.", "Urb.", "Util.", "Veh.", "Vill.",
    "Welf.", "Wk.", "Wkly.", "Yr.",
]
add_all(T6_WORDS, "other")
# Plural forms keep the final period: "Bldg." -> "Bldgs.".
for w in T6_WORDS:
    stem = w[:-1]
    if not stem.endswith("s") and "'" not in stem[-2:]:
        add(stem + "s.", "other")

# --- geography -------------------------------------------------------------
add_all(STATES, "other")
add_all([
    "Afr.", "Arg.", "Austl.", "Aus.", "Belg.", "Bol.", "Braz.", "Can.",
    "Chile.", "Col.", "Den.", "Ecu.", "Eng.", "Eur.", "Fin.", "Fr.",
    "Ger.", "Gr.", "Hond.", "Hung.", "Ice.", "Indon.", "Ir.", "Isr.",
    "It.", "Jam.", "Kor.", "Lux.", "Mex.", "Neth.", "Nic.", "Nor.",
    "N.Z.", "Pak.", "Para.", "Phil.", "Pol.", "Port.", "Rom.", "Russ.",
    "Scot.", "Sp.", "Swed.", "Switz.", "Turk.", "U.K.", "Ukr.", "Uru.",
    "Venez.", "Yugo.",
    "Balt.", "Bos.", "Chi.", "Cin.", "Clev.", "Dall.", "Den.", "Det.",
    "Hous.", "L.A.", "Mia.", "Mpls.", "N.Y.C.", "Phila.", "Phx.", "Pitt.",
    "S.F.", "St.Louis.", "Wash.D.C.",
], "other")

# --- journals --------------------------------------------------------------
SCHOOLS = [
    "Harv.", "Colum.", "Stan.", "Chi.", "Mich.", "Minn.", "Nw.", "Geo.",
    "Vand.", "Calif.", "Tex.", "Va.", "Wis.", "N.Y.U.", "U.Pa.", "B.U.",
    "B.C.", "Am.U.", "Geo.Wash.", "Geo.Mason.", "U.C.L.A.", "S.M.U.",
    "B.Y.U.", "Loy.", "Pepp.", "Tul.", "Emory.", "Fordham.", "Hastings.",
    "Howard.", "Rutgers.", "Temple.", "Vill.", "Wash.U.",
]
for s in SCHOOLS:
    for j in ["L.Rev.", "L.J.", "J.L.", "L.Q.", "Int'lL.J.", "J.Int'lL.",
              "Bus.L.Rev.", "C.R.-C.L.L.Rev."]:
        add(s + j, "other")
add_all(["L.Rev.", "L.J.", "L.Q.", "J.L.", "Law.", "Y.B."], "other")

# --- agencies and organizations -------------------------------------------
add_all([
    "F.B.I.", "S.E.C.", "I.R.S.", "I.R.C.", "E.P.A.", "F.C.C.", "F.T.C.",
    "N.L.R.B.", "O.S.H.A.", "H.U.D.", "D.O.J.", "D.O.D.", "D.O.T.",
    "U.N.", "E.U.", "N.A.T.O.", "A.B.A.", "A.L.I.", "I.C.C.", "C.I.A.",
    "N.S.A.", "S.S.A.", "F.D.A.", "U.S.D.A.", "F.A.A.", "F.E.C.",
    "C.F.T.C.", "F.D.I.C.", "G.A.O.", "O.M.B.", "N.I.H.", "C.D.C.",
    "T.V.A.", "F.H.A.", "V.A.", "P.T.O.", "U.S.P.T.O.", "W.T.O.",
    "I.M.F.", "O.E.C.D.",
], "other")

# --- titles, months, degrees, document parts -------------------------------
add_all([
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Hon.", "Fr.", "Sr.", "Jr.",
    "Esq.", "Gov.", "Lt.", "Col.", "Maj.", "Capt.", "Sgt.", "Adm.",
    "Sen.", "Reps.", "V.P.", "Atty.", "Att'y.", "Treas.", "Dir.", "Mgr.",
    "Supt.", "Insp.", "St.", "Mt.", "Ft.",
], "other")
add_all([
    "Jan.", "Feb.", "Mar.", "Apr.", "Jun.", "Jul.", "Aug.", "Sept.",
    "Sep.", "Oct.", "Nov.", "Dec.", "Mon.", "Tue.", "Tues.", "Wed.",
    "Thu.", "Thurs.", "Fri.", "Sat.", "Sun.",
], "other")
add_all([
    "B.A.", "B.S.", "M.A.", "M.S.", "M.B.A.", "J.D.", "LL.B.", "LL.M.",
    "Ph.D.", "M.D.", "D.D.S.", "J.S.D.", "B.C.L.", "M.P.H.", "M.P.A.",
], "other")
add_all([
    "p.", "pp.", "ch.", "chs.", "art.", "arts.", "para.", "paras.",
    "fig.", "figs.", "tbl.", "tbls.", "n.", "nn.", "vol.", "vols.",
    "ed.", "eds.", "rev.", "supp.", "pt.", "pts.", "cl.", "cls.",
    "subsec.", "subd.", "tit.", "div.", "exs.", "app.", "apps.",
    "attach.", "encl.", "no.", "nos.", "dkt.", "doc.", "docs.",
], "other")

# --- personal initials -----------------------------------------------------
for a in "abcdefghijklmnopqrstuvwxyz":
    add(f"{a}.", "other")
for a in "abcdefghijklmnopqrstuvwxyz":
    for b in "abcdefghijklmnopqrstuvwxyz":
        add(f"{a}.{b}.", "other")


def main():
    lines = [
        "# Legal abbreviation dictionary.",
        "# Format: abbreviation,category  --  categories: court, statute,",
        "# latin, corporate, reporter, other.  '#' starts a comment.",
        "# Regenerate with tools/gen_abbreviations.py.",
    ]
    for abbr in sorted(entries, key=lambda a: (a.lower(), a)):
        lines.append(f"{abbr},{entries[abbr]}")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    # Case-folded uniqueness check mirrors the loader's dedupe.
    folded = {a.lower() for a in entries}
    print(f"wrote {len(entries)} entries ({len(folded)} case-folded) to {OUT}")
    if len(folded) < 4000:
        print("ERROR: dictionary below 4000 entries", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
