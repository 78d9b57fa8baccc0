import io
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import seaborn as sns
from reportlab.lib import colors
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Image, PageBreak, Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from dynamics.speed_limit import QSL_TOLERANCE
from utils.sim_config import load_config

# Set professional styling
plt.style.use('seaborn-v0_8-whitegrid')
sns.set_palette("husl")


class QuenchReportGenerator:
    """Multi-page PDF summary of one quench-metrology configuration.

    `report_data` maps section names to ReportResult objects ("Derived
    Parameters", "Field Response", "Coherence", "Fisher Information",
    "Speed Limit"); absent sections are skipped.
    """

    def __init__(self, filename="quench_report.pdf"):
        self.filename = str(filename)
        self.styles = self._create_custom_styles()
        project = load_config("project")
        # invariant=1 drops creation dates and random ids so reruns give identical bytes
        self.doc = SimpleDocTemplate(self.filename, pagesize=A4,
                                     rightMargin=72, leftMargin=72,
                                     topMargin=72, bottomMargin=18,
                                     title="Quench Metrology Simulation Report",
                                     author=project["name"],
                                     invariant=1)
        self.elements = []

    def _create_custom_styles(self):
        """Create custom professional styles"""
        styles = getSampleStyleSheet()

        styles.add(ParagraphStyle(
            name='CustomTitle',
            parent=styles['Title'],
            fontSize=22,
            spaceAfter=30,
            alignment=1,  # Center
            textColor=colors.HexColor('#2c3e50'),
            fontName='Helvetica-Bold'
        ))

        styles.add(ParagraphStyle(
            name='SectionHeader',
            parent=styles['Heading2'],
            fontSize=16,
            spaceAfter=12,
            spaceBefore=20,
            textColor=colors.HexColor('#34495e'),
            fontName='Helvetica-Bold',
            borderWidth=1,
            borderColor=colors.HexColor('#3498db'),
            borderPadding=8,
            backColor=colors.HexColor('#ecf0f1')
        ))

        styles.add(ParagraphStyle(
            name='Subsection',
            parent=styles['Heading3'],
            fontSize=14,
            spaceAfter=8,
            spaceBefore=12,
            textColor=colors.HexColor('#2c3e50'),
            fontName='Helvetica-Bold'
        ))

        styles.add(ParagraphStyle(
            name='Warning',
            parent=styles['Normal'],
            fontSize=11,
            textColor=colors.HexColor('#e74c3c'),
            fontName='Helvetica-Bold',
            backColor=colors.HexColor('#fadbd8'),
            borderWidth=1,
            borderColor=colors.HexColor('#e74c3c'),
            borderPadding=5
        ))

        return styles

    def _get_status_color(self, status_text):
        status_lower = status_text.lower()
        if 'critical' in status_lower:
            return colors.HexColor('#e74c3c')  # Red
        elif 'warning' in status_lower:
            return colors.HexColor('#f39c12')  # Orange
        elif 'good' in status_lower:
            return colors.HexColor('#27ae60')  # Green
        else:
            return colors.black

    def _status_higher_is_better(self, value, warn, crit):
        """Margins: positive is healthy, near zero is marginal."""
        if value is None or not math.isfinite(value):
            return "N/A"
        if value <= crit:
            return "CRITICAL"
        elif value <= warn:
            return "WARNING"
        return "GOOD"

    def _status_lower_is_better(self, value, warn, crit):
        if value is None or not math.isfinite(value):
            return "N/A"
        if value >= crit:
            return "CRITICAL"
        elif value >= warn:
            return "WARNING"
        return "GOOD"

    def _create_header(self, meta):
        header_elements = [
            Paragraph("Quench Metrology Simulation Report", self.styles['CustomTitle']),
            Spacer(1, 10),
            Paragraph(f"Program: {meta.get('program')} {meta.get('version')}", self.styles['Normal']),
            Paragraph(f"Seed: {meta.get('seed')}  |  Fock tail tolerance: {meta.get('tail_tol')}",
                      self.styles['Normal']),
        ]
        parameters = meta.get("parameters", {})
        shown = {k: v for k, v in parameters.items()
                 if v is not None and k not in ("mode", "format", "workers")}
        for key in sorted(shown):
            header_elements.append(Paragraph(f"{key}: {shown[key]}", self.styles['Normal']))
        header_elements.append(Spacer(1, 20))
        return header_elements

    def _min_qsl_margin(self, speed_limit):
        if speed_limit is None or not speed_limit.summary:
            return None
        return min(entry["min_margin"] for entry in speed_limit.summary.values())

    def _create_executive_summary(self, report_data):
        summary_elements = [Paragraph("Executive Summary", self.styles['SectionHeader'])]

        derived = report_data.get("Derived Parameters")
        row = derived.summary if derived is not None else {}
        stability = row.get("stability_margin_radns")
        validity = row.get("validity_ratio")
        qsl = self._min_qsl_margin(report_data.get("Speed Limit"))
        threshold = load_config("simulation")["validity_threshold"]

        def fmt(value, spec):
            return "N/A" if value is None else format(value, spec)

        summary_data = [
            ['Metric', 'Current Value', 'Status'],
            ['Stability margin (rad/ns)', fmt(stability, '.4g'),
             self._status_higher_is_better(stability, warn=0.1, crit=0.0)],
            ['Nonlinearity ratio n̄/NS', fmt(validity, '.3g'),
             self._status_lower_is_better(validity, warn=threshold / 10.0, crit=threshold)],
            ['Min QSL margin (rad)', fmt(qsl, '.3g'),
             self._status_higher_is_better(qsl, warn=0.0, crit=-QSL_TOLERANCE)],
        ]
        fisher = report_data.get("Fisher Information")
        if fisher is not None:
            for case, entry in fisher.summary.items():
                summary_data.append([f"F_C plateau ({case})", f"{entry['plateau']:.4g}",
                                     f"bound {entry['quantum_bound']:.4g}"])

        summary_table = Table(summary_data, colWidths=[2.4*inch, 1.5*inch, 1.6*inch])
        table_style = [
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#3498db')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, 0), 12),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 12),
            ('BACKGROUND', (0, 1), (-1, -1), colors.beige),
            ('GRID', (0, 0), (-1, -1), 1, colors.black),
            ('FONTSIZE', (0, 1), (-1, -1), 10),
        ]
        for i in range(1, len(summary_data)):
            table_style.append(('TEXTCOLOR', (2, i), (2, i), self._get_status_color(summary_data[i][2])))
            table_style.append(('FONTNAME', (2, i), (2, i), 'Helvetica-Bold'))
        summary_table.setStyle(TableStyle(table_style))

        summary_elements.append(summary_table)
        summary_elements.append(Spacer(1, 20))
        if row.get("validity_warning"):
            summary_elements.append(Paragraph(
                "Mean occupation is not small against N·S; the quadratic magnon model may not hold.",
                self.styles['Warning']))
        return summary_elements

    def _to_png(self, fig, dpi=150):
        img_buffer = io.BytesIO()
        fig.savefig(img_buffer, format='png', dpi=dpi, bbox_inches='tight',
                    metadata={'Software': None})
        img_buffer.seek(0)
        plt.close(fig)
        return img_buffer

    def _create_readout_charts(self, fisher, coherence):
        """F_C(φ) with its asymptote, and p(+|φ) per r."""
        if fisher is None and coherence is None:
            return None
        fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(10, 9))

        if fisher is not None:
            frame = fisher.frame
            for r, group in frame.groupby("r", sort=True):
                ax1.plot(group["phi"], group["fisher"], label=f"r = {r:.3g}", linewidth=1.2)
                if "fisher_dephased" in group:
                    ax1.plot(group["phi"], group["fisher_dephased"], linestyle='--', alpha=0.7,
                             label=f"r = {r:.3g}, dephased")
            for case, entry in fisher.summary.items():
                ax1.axhline(y=entry["asymptote"], color='gray', linestyle=':', alpha=0.7)
            ax1.set_yscale('log')
            ax1.set_xlabel('φ = ω↑T (rad)')
            ax1.set_ylabel('F_C(φ)')
            ax1.set_title('Classical Fisher Information', fontsize=12, fontweight='bold')
            ax1.legend(fontsize=8)
            ax1.grid(True, alpha=0.3)
        else:
            ax1.axis('off')

        if coherence is not None:
            frame = coherence.frame
            for r, group in frame.groupby("r", sort=True):
                ax2.plot(group["phi"], group["p_plus"], label=f"r = {r:.3g}", linewidth=1.2)
                if "p_plus_dephased" in group:
                    ax2.plot(group["phi"], group["p_plus_dephased"], linestyle='--', alpha=0.7)
            ax2.set_ylim(0, 1.02)
            ax2.set_xlabel('φ = ω↑t (rad)')
            ax2.set_ylabel('p(+|φ)')
            ax2.set_title('Qubit Readout Probability', fontsize=12, fontweight='bold')
            ax2.legend(fontsize=8)
            ax2.grid(True, alpha=0.3)
        else:
            ax2.axis('off')

        plt.tight_layout()
        return self._to_png(fig)

    def _create_field_chart(self, field_response):
        if field_response is None:
            return None
        frame = field_response.frame
        fig, ax1 = plt.subplots(figsize=(10, 5))
        ax1.plot(frame["field_T"], frame["r"], color='#8e44ad', linewidth=1.5)
        ax1.set_xlabel('μ0 h (T)')
        ax1.set_ylabel('relative squeezing r', color='#8e44ad')
        ax2 = ax1.twinx()
        ax2.plot(frame["field_T"], frame["n_bar"], color='#e67e22', linewidth=1.2, linestyle='--')
        ax2.set_yscale('log')
        ax2.set_ylabel('n̄ = sinh² r', color='#e67e22')
        unstable = frame[~frame["stable"]]
        if len(unstable):
            ax1.axvspan(unstable["field_T"].min(), unstable["field_T"].max(),
                        color='#e74c3c', alpha=0.15, label='unstable')
            ax1.legend(fontsize=8)
        ax1.set_title('Field Response of the Squeezing', fontsize=12, fontweight='bold')
        ax1.grid(True, alpha=0.3)
        plt.tight_layout()
        return self._to_png(fig)

    def _create_speed_limit_chart(self, speed_limit):
        if speed_limit is None:
            return None
        frame = speed_limit.frame
        fig, ax = plt.subplots(figsize=(10, 5))
        for r, group in frame.groupby("r", sort=True):
            line, = ax.plot(group["time_ns"], group["bures"], linewidth=1.2, label=f"Bures angle, r = {r:.3g}")
            ax.plot(group["time_ns"], group["qsl_bound"], linestyle='--', color=line.get_color(),
                    alpha=0.7, label=f"t√F_Q / 2, r = {r:.3g}")
        ax.axhline(y=math.pi / 2, color='gray', linestyle=':', alpha=0.7)
        ax.set_ylim(0, math.pi / 2 * 1.1)
        ax.set_xlabel('t (ns)')
        ax.set_ylabel('angle (rad)')
        ax.set_title('Bures Angle vs Quantum Speed Limit', fontsize=12, fontweight='bold')
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        plt.tight_layout()
        return self._to_png(fig)

    def _create_derived_table(self, derived):
        if derived is None:
            return [Paragraph("Derived Parameters: no physical parameters given", self.styles['Normal'])]
        table_data = [['Quantity', 'Value']]
        for key, value in derived.summary.items():
            text = f"{value:.6g}" if isinstance(value, float) else str(value)
            table_data.append([key, text])
        table = Table(table_data, colWidths=[3*inch, 2*inch], repeatRows=1)
        table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor('#34495e')),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('ALIGN', (0, 0), (-1, -1), 'LEFT'),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, 0), 10),
            ('BOTTOMPADDING', (0, 0), (-1, 0), 12),
            ('GRID', (0, 0), (-1, -1), 1, colors.black),
            ('FONTSIZE', (0, 1), (-1, -1), 9),
            ('ROWBACKGROUNDS', (0, 1), (-1, -1), [colors.white, colors.HexColor('#f8f9fa')]),
        ]))
        return [Paragraph("Derived Parameters", self.styles['Subsection']), table]

    def generate_pdf(self, report_data, meta):
        """Build the PDF from the per-mode results and return its path."""
        self.elements.extend(self._create_header(meta))
        self.elements.extend(self._create_executive_summary(report_data))
        self.elements.extend(self._create_derived_table(report_data.get("Derived Parameters")))
        self.elements.append(PageBreak())

        self.elements.append(Paragraph("Readout and Precision", self.styles['SectionHeader']))
        readout = self._create_readout_charts(report_data.get("Fisher Information"),
                                              report_data.get("Coherence"))
        if readout:
            self.elements.append(Image(readout, width=6.5*inch, height=5.8*inch))
        self.elements.append(PageBreak())

        self.elements.append(Paragraph("Dynamics", self.styles['SectionHeader']))
        speed = self._create_speed_limit_chart(report_data.get("Speed Limit"))
        if speed:
            self.elements.append(Image(speed, width=6.5*inch, height=3.25*inch))
            self.elements.append(Spacer(1, 20))
        field = self._create_field_chart(report_data.get("Field Response"))
        if field:
            self.elements.append(Image(field, width=6.5*inch, height=3.25*inch))

        self.doc.build(self.elements)
        print(f"✅ Quench report generated: {self.filename}")
        return self.filename
