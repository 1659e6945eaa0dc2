import json
import sys
from functools import wraps
from typing import Optional, Sequence

import click
import pandas as pd

from tracederiv import Link
from tracederiv.analysis import (
    accepted_alphabets,
    check_rank,
    check_uniform_rank,
    language_connected,
    star_connected,
)
from tracederiv.automata import (
    ExplorationBudget,
    automaton_to_dict,
    build_automaton,
    export_automaton,
)
from tracederiv.engines import (
    DEFAULT_ORACLE_LENGTH,
    ENGINE_NAMES,
    automaton_kind,
    default_alphabet,
    derive,
    membership,
)
from tracederiv.errormanager import (
    AlphabetError,
    RegexpSyntaxError,
    TraceDerivError,
    UnknownLetterError,
)
from tracederiv.io_utilities import load_dict
from tracederiv.links import FromFile, StripErrors, ToFile
from tracederiv.logging import logger, set_global_level
from tracederiv.oracle import closure_language, closure_member_oracle
from tracederiv.syntax import (
    load_alphabet,
    parse_regexp,
    parse_word,
    render_regexp,
    render_word,
)

TIERS = ("none", "t0", "t1")


@click.group()
@click.option(
    "--log-level",
    default=None,
    type=click.Choice(["debug", "info", "warning", "error", "critical"]),
    help="Root log level, default warning",
)
def tracederiv(log_level):
    """Reordering derivatives of regular expressions over independence alphabets"""
    if log_level:
        set_global_level(log_level)


# Shared options


def alphabet_option(f):
    return click.option(
        "--alphabet",
        "alphabet_file",
        default=None,
        type=click.Path(exists=True, dir_okay=False),
        help="Alphabet file ('letters: a b', 'indep: a b'), or YAML/JSON. "
        "Default: letters of expr and word, all pairs independent",
    )(f)


def expr_option(f):
    return click.option("--expr", required=True, help="Regular expression, e.g. '(aa+ab+b)*'")(f)


def engine_option(default: str):
    return click.option(
        "--engine",
        default=default,
        show_default=True,
        type=click.Choice(ENGINE_NAMES),
        help="Derivative engine",
    )


def bound_option(f):
    return click.option(
        "--bound",
        default=None,
        type=click.IntRange(min=1),
        help="Maximal number of scattered blocks, refined engine only",
    )(f)


def normalize_option(f):
    return click.option(
        "--normalize",
        default="none",
        show_default=True,
        type=click.Choice(TIERS),
        help="Normalization tier applied to the results",
    )(f)


def json_option(f):
    return click.option("--json", "as_json", is_flag=True, help="Print JSON")(f)


def strict_option(f):
    return click.option(
        "--strict", is_flag=True, help="Exit with code 1 on a negative decision result"
    )(f)


def usage_errors(f):
    """Report library errors as click usage errors (exit code 2)"""

    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except click.ClickException:
            raise
        except TraceDerivError as err:
            raise click.UsageError(str(err)) from err

    return wrapper


def _inputs(expr: str, words: Sequence[str], alphabet_file: Optional[str]):
    alphabet = None
    if alphabet_file:
        try:
            alphabet = load_alphabet(alphabet_file)
        except (AlphabetError, ValueError) as err:
            raise click.BadParameter(str(err), param_hint="--alphabet") from err
    try:
        e = parse_regexp(expr, alphabet)
    except (RegexpSyntaxError, UnknownLetterError) as err:
        raise click.BadParameter(str(err), param_hint="--expr") from err
    try:
        parsed_words = [parse_word(word, alphabet) for word in words]
    except UnknownLetterError as err:
        raise click.BadParameter(str(err), param_hint="--word") from err
    if alphabet is None:
        alphabet = default_alphabet(e, parsed_words)
    return e, parsed_words, alphabet


def _echo(data: dict, as_json: bool, text: str):
    click.echo(json.dumps(data, indent=2) if as_json else text)


def _verdict(value: bool) -> str:
    return "true" if value else "false"


def _finish(strict: bool, positive: bool):
    if strict and not positive:
        sys.exit(1)


def _derivation_command(engine, expr, word, alphabet_file, bound, normalize, max_len, as_json):
    e, words, alphabet = _inputs(expr, [word], alphabet_file)
    result = derive(engine, e, words[0], alphabet, bound, normalize, max_len)
    data = {
        "expr": render_regexp(e),
        "word": render_word(words[0], empty=""),
        "normalize": normalize,
        **result.to_dict(),
    }
    _echo(data, as_json, result.render())


@tracederiv.command(name="derive")
@alphabet_option
@expr_option
@click.option("--word", default="", help="Word to derive along, '' or 'ε' for the empty word")
@engine_option("brzozowski-reorder")
@bound_option
@normalize_option
@click.option("--max-len", default=DEFAULT_ORACLE_LENGTH, type=click.IntRange(min=0), help="Word length bound of the oracle engine")
@json_option
@usage_errors
def derive_command(alphabet_file, expr, word, engine, bound, normalize, max_len, as_json):
    """Derivative of EXPR along WORD"""
    _derivation_command(engine, expr, word, alphabet_file, bound, normalize, max_len, as_json)


@tracederiv.command()
@alphabet_option
@expr_option
@click.option("--letter", required=True, help="Single letter to derive along")
@engine_option("antimirov-reorder")
@bound_option
@normalize_option
@click.option("--max-len", default=DEFAULT_ORACLE_LENGTH, type=click.IntRange(min=0), help="Word length bound of the oracle engine")
@json_option
@usage_errors
def parts(alphabet_file, expr, letter, engine, bound, normalize, max_len, as_json):
    """Parts of the derivative of EXPR along one letter"""
    if len(parse_word(letter)) != 1:
        raise click.BadParameter("Expected exactly one letter", param_hint="--letter")
    _derivation_command(engine, expr, letter, alphabet_file, bound, normalize, max_len, as_json)


@tracederiv.command()
@alphabet_option
@expr_option
@click.option("--word", default="", help="Word to derive along")
@bound_option
@normalize_option
@json_option
@usage_errors
def refine(alphabet_file, expr, word, bound, normalize, as_json):
    """State lists of the refined derivative of EXPR along WORD, one per line"""
    _derivation_command("refined", expr, word, alphabet_file, bound, normalize, DEFAULT_ORACLE_LENGTH, as_json)


@tracederiv.command()
@alphabet_option
@expr_option
@click.option("--word", default="", help="Word to test")
@engine_option("refined")
@bound_option
@normalize_option
@json_option
@strict_option
@usage_errors
def member(alphabet_file, expr, word, engine, bound, normalize, as_json, strict):
    """Membership of WORD; classical engines test the language, the others its trace closure"""
    e, words, alphabet = _inputs(expr, [word], alphabet_file)
    result = membership(engine, e, words[0], alphabet, bound, normalize)
    data = {
        "expr": render_regexp(e),
        "word": render_word(words[0], empty=""),
        "engine": engine,
        "bound": bound,
        "member": result,
    }
    _echo(data, as_json, _verdict(result))
    _finish(strict, result)


@tracederiv.command()
@alphabet_option
@expr_option
@engine_option("antimirov-reorder")
@bound_option
@normalize_option
@click.option("--budget", default=10_000, show_default=True, type=click.IntRange(min=1), help="Maximal number of explored states")
@click.option("--max-len", default=DEFAULT_ORACLE_LENGTH, show_default=True, type=click.IntRange(min=0), help="Closure length of the oracle engine")
@click.option("--dot", "dot_file", default=None, type=click.Path(dir_okay=False, writable=True), help="Write the automaton as Graphviz DOT")
@json_option
@strict_option
@usage_errors
def build(alphabet_file, expr, engine, bound, normalize, budget, max_len, dot_file, as_json, strict):
    """Explore the automaton generated by an engine; --strict fails on incomplete exploration"""
    e, _, alphabet = _inputs(expr, [], alphabet_file)
    kind = automaton_kind(engine, bound)
    automaton = build_automaton(
        e, alphabet, kind, normalize, ExplorationBudget(max_states=budget), max_len
    )
    if dot_file:
        with open(dot_file, "w") as file:
            file.write(export_automaton(automaton, "dot"))
        logger.info(f"Wrote DOT graph to {dot_file}")
    summary = (
        f"kind: {automaton.kind}\n"
        f"states: {len(automaton)}\n"
        f"finals: {len(automaton.finals)}\n"
        f"transitions: {len(automaton.transitions)}\n"
        f"complete: {_verdict(automaton.complete)}"
    )
    _echo(automaton_to_dict(automaton), as_json, summary)
    _finish(strict, automaton.complete)


@tracederiv.command()
@alphabet_option
@expr_option
@json_option
@strict_option
@usage_errors
def analyze(alphabet_file, expr, as_json, strict):
    """Connectedness of the language and star-connectedness of EXPR"""
    e, _, alphabet = _inputs(expr, [], alphabet_file)
    connected = language_connected(e, alphabet)
    starred = star_connected(e, alphabet)
    data = {
        "expr": render_regexp(e),
        "connected": connected,
        "star_connected": starred,
        "letter_sets": sorted(
            sorted(letters, key=alphabet.position) for letters in accepted_alphabets(e)
        ),
    }
    text = f"connected: {_verdict(connected)}\nstar-connected: {_verdict(starred)}"
    _echo(data, as_json, text)
    _finish(strict, starred)


@tracederiv.command()
@alphabet_option
@expr_option
@click.option("--bound", required=True, type=click.IntRange(min=1), help="Scattering degree bound N")
@click.option("--max-len", default=6, show_default=True, type=click.IntRange(min=0), help="Length bound of the checked closure words")
@click.option("--uniform", is_flag=True, help="Check the uniform rank instead")
@click.option("--word", "words", multiple=True, help="Check only these words, may be repeated")
@json_option
@strict_option
@usage_errors
def rank(alphabet_file, expr, bound, max_len, uniform, words, as_json, strict):
    """Bounded check of the (uniform) scattering rank of EXPR"""
    e, parsed_words, alphabet = _inputs(expr, list(words), alphabet_file)
    check = check_uniform_rank if uniform else check_rank
    verdict = check(e, alphabet, bound, max_len, words=parsed_words or None)
    text = f"{verdict.kind.value} {bound}: {verdict.outcome.value}"
    if verdict.word is not None:
        text += f" at {render_word(verdict.word)}"
        if verdict.split is not None:
            u, v = verdict.split
            text += f" split ({render_word(u)}, {render_word(v)})"
    _echo(verdict.to_dict(), as_json, text)
    _finish(strict, verdict.holds)


@tracederiv.command()
@alphabet_option
@expr_option
@click.option("--word", default=None, help="Decide closure membership of this word")
@click.option("--max-len", default=DEFAULT_ORACLE_LENGTH, show_default=True, type=click.IntRange(min=0), help="Length bound of the listed closure")
@json_option
@strict_option
@usage_errors
def oracle(alphabet_file, expr, word, max_len, as_json, strict):
    """Brute-force trace closure: membership of --word, or all closure words up to --max-len"""
    e, words, alphabet = _inputs(expr, [] if word is None else [word], alphabet_file)
    if words:
        result = closure_member_oracle(e, words[0], alphabet)
        data = {"expr": render_regexp(e), "word": render_word(words[0], empty=""), "member": result}
        _echo(data, as_json, _verdict(result))
        _finish(strict, result)
        return
    closure = sorted(closure_language(e, max_len, alphabet), key=alphabet.word_sort_key)
    data = {
        "expr": render_regexp(e),
        "max_len": max_len,
        "words": [render_word(w, empty="") for w in closure],
    }
    _echo(data, as_json, ", ".join(map(render_word, closure)))


# Sweep chains


def _parse_options(options) -> dict:
    return dict(option.split("=", 1) for option in options or ())


def process_data(config_file, in_file, out_file, error_file, log_level, pd_read_option, pd_write_option):
    chain = Link.from_config_file(config_file)
    if log_level:
        chain.set_log_level(log_level)

    df = pd.DataFrame()
    if in_file:
        read_file = FromFile(in_file)
        read_file.pd_readcsv_options.update(_parse_options(pd_read_option))
        df = read_file(df)

    df = chain(df)

    if error_file:
        strip = StripErrors(filename=error_file)
        df = strip(df)
        if strip.has_errors:
            logger.warning(f"{len(strip.error_df)} rows with errors saved to {error_file}")

    if out_file:
        write_file = ToFile(out_file)
        write_file.pd_tocsv_options.update(_parse_options(pd_write_option))
        write_file(df)
    return df


@tracederiv.command()
@click.argument("config_file", type=click.Path(exists=True, readable=True))
@click.option("--in_file", default=None, type=click.Path(exists=True, readable=True), help="Optional input CSV")
@click.option("--out_file", default=None, type=click.Path(writable=True), help="Optional output CSV")
@click.option("--error_file", default=None, type=click.Path(writable=True), help="Write rows with errors here and drop them from the output")
@click.option("--debug_level", default=None, type=str, help="Log level of the chain")
@click.option("--pd_read_option", multiple=True, help="keyword=value passed to pandas read_csv, may be repeated")
@click.option("--pd_write_option", multiple=True, help="keyword=value passed to pandas to_csv, may be repeated")
@usage_errors
def run(config_file, in_file, out_file, error_file, debug_level, pd_read_option, pd_write_option):
    """CONFIG_FILE: json/yaml file describing the sweep chain or link"""
    process_data(config_file, in_file, out_file, error_file, debug_level, pd_read_option, pd_write_option)


def io_config(in_config, out_config, defaults, version, loglevel):
    params = load_dict(in_config)
    # unspecified switches follow what the input config contains
    if version is None:
        version = "__version__" in params
    if loglevel is None:
        loglevel = "__loglevel__" in params
    chain = Link.from_params(params)
    chain.to_config_file(out_config, defaults=defaults, version=version, log_level=loglevel)


@tracederiv.command()
@click.argument("in_config_file", type=click.Path(exists=True, readable=True))
@click.argument("out_config_file", type=click.Path(writable=True))
@click.option("--defaults/--no-defaults", default=True, help="Include parameters that have their default value")
@click.option("--version/--no-version", default=None, help="Include version info, default as in the input config")
@click.option("--loglevel/--no-loglevel", default=None, help="Include the log level, default as in the input config")
def config(in_config_file, out_config_file, defaults, version, loglevel):
    """Rewrite IN_CONFIG_FILE to OUT_CONFIG_FILE (json/yaml)"""
    io_config(in_config_file, out_config_file, defaults, version, loglevel)


if __name__ == "__main__":
    tracederiv()
