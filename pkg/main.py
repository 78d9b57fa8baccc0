import json
import logging
import sys

from reports.adaptive_search import get_adaptive_search
from reports.coherence import get_coherence
from reports.derived_params import get_derived_params
from reports.field_response import get_field_response
from reports.fisher_info import get_fisher_info
from reports.mle_study import get_mle_study
from reports.speed_limit import get_speed_limit_check
from reports.summary_report import write_summary_report
from utils.emitter import emit, render
from utils.errors import QuenchSimError
from utils.run_config import build_parser, config_from_args
from utils.sim_config import load_config

logger = logging.getLogger("quenchsim")

BUILDERS = {
    "params": get_derived_params,
    "sweep-field": get_field_response,
    "coherence": get_coherence,
    "fisher": get_fisher_info,
    "mle-sim": get_mle_study,
    "qsl-check": get_speed_limit_check,
    "adaptive-search": get_adaptive_search,
}


def setup_logging(verbose=False):
    settings = load_config("logging")
    level = logging.DEBUG if verbose else getattr(logging, settings["level"])
    logging.basicConfig(level=level, format=settings["format"], stream=sys.stderr)


def run(cfg):
    """Execute one validated RunConfig; returns the process exit code."""
    if cfg.mode == "report":
        write_summary_report(cfg)
        return 0

    result = BUILDERS[cfg.mode](cfg)
    if cfg.out:
        path = emit(result, cfg.out, cfg.format)
        print(f"✅ {cfg.mode} {cfg.format} written: {path}")
    else:
        sys.stdout.write(render(result, cfg.format))
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        cfg = config_from_args(args)
        logger.debug("run configuration: %s", cfg.as_meta())
        return run(cfg)
    except QuenchSimError as e:
        logger.error(str(e))
        sys.stderr.write(json.dumps(e.to_record(), sort_keys=True, default=str) + "\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
