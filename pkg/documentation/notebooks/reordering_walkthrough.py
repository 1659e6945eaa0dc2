# %%
# Reordering derivatives on the running example E = (aa+ab+b)* with a and b independent
from tracederiv.automata import REORDER_ANTIMIROV, build_automaton, export_automaton
from tracederiv.engines import derive
from tracederiv.syntax import parse_alphabet, parse_regexp, parse_word

alphabet = parse_alphabet("letters: a b; indep: a b")
E = parse_regexp("(aa+ab+b)*")

# %% The Brzozowski reordering derivative along bb, normalized with the star collapses
derive("brzozowski-reorder", E, parse_word("bb"), alphabet, tier="t1").render()

# %% Antimirov reordering parts along b, without normalization
derive("antimirov-reorder", parse_regexp("aa+ab+b"), parse_word("b"), alphabet).items

# %% Refined state lists with at most two scattered blocks
print(derive("refined", E, parse_word("bb"), alphabet, bound=2).render())

# %%
# a*b* has a connected language under every star, so its reordering Antimirov automaton is finite
m = build_automaton(parse_regexp("a*b*"), alphabet, REORDER_ANTIMIROV, "t1")
print(export_automaton(m, "dot"))

# %%
# (ab)* is not star-connected: every b read first pushes one more a into the derivative
for n in range(4):
    print(n, derive("brzozowski-reorder", parse_regexp("(ab)*"), ("b",) * n, alphabet, tier="t1").render())

# %%
# A small sweep: the same question asked of every engine, one column per engine
import pandas as pd

from tracederiv.links import Agreement, Membership, RandomRegexps, StripErrors, WordGrid

engines = ["brzozowski-reorder", "antimirov-reorder", "refined", "oracle"]
sweep = sum(
    [RandomRegexps(count=10, max_size=6, seed=3), WordGrid(max_len=3)]
    + [Membership(engine=engine) for engine in engines]
    + [Agreement(columns=[f"member_{engine}" for engine in engines]), StripErrors()]
)
df = sweep(pd.DataFrame())
df.agree.all()

# %% The chain is saved and rerun from the command line with `tracederiv run sweep.yaml`
sweep.get_params()
