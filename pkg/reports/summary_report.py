import logging
from dataclasses import replace

from reports.coherence import get_coherence
from reports.derived_params import get_derived_params
from reports.field_response import get_field_response
from reports.fisher_info import get_fisher_info
from reports.speed_limit import get_speed_limit_check
from utils.emitter import build_meta
from utils.pdf_generator import QuenchReportGenerator
from utils.sim_config import load_config

logger = logging.getLogger(__name__)


def collect_report_data(cfg):
    """Run every data mode the configuration supports, keyed by PDF section."""
    report_data = {}
    if cfg.physical:
        report_data["Derived Parameters"] = get_derived_params(replace(cfg, mode="params"))
        if cfg.gap_ghz is not None:
            sweep = load_config("sweep_field")
            report_data["Field Response"] = get_field_response(
                replace(cfg, mode="sweep-field", steps=sweep["steps"]))
    report_data["Fisher Information"] = get_fisher_info(replace(cfg, mode="fisher"))
    report_data["Coherence"] = get_coherence(replace(cfg, mode="coherence", phi_min=max(cfg.phi_min, 0.0)))
    report_data["Speed Limit"] = get_speed_limit_check(replace(cfg, mode="qsl-check", phi_min=max(cfg.phi_min, 0.0)))
    logger.info("report sections: %s", ", ".join(report_data))
    return report_data


def write_summary_report(cfg):
    """Render the PDF summary to cfg.out; returns the path."""
    report_data = collect_report_data(cfg)
    meta = build_meta(cfg.as_meta(), seed=cfg.seed, tail_tol=cfg.tail_tol)
    generator = QuenchReportGenerator(cfg.out)
    return generator.generate_pdf(report_data, meta)
