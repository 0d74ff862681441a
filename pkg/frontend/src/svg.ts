/**
 * Tiny SVG panel builder: linear/log scales, axes with tick labels,
 * bars, polylines and markers, composed into a standalone SVG string.
 * Overlay elements carry class="overlay" so their presence is testable.
 */

export interface PanelGeometry {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_GEOMETRY: PanelGeometry = {
  width: 560,
  height: 400,
  margin: { top: 36, right: 16, bottom: 48, left: 64 },
};

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const [r0, r1] = range;
  const span = hi - lo || 1;
  const fn = ((v: number) => r0 + ((Math.log10(v) - lo) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

export function ticks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo || 1;
  const rawStep = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= n) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

const fmt = (v: number): string =>
  Math.abs(v) >= 1e4 || (v !== 0 && Math.abs(v) < 1e-3)
    ? v.toExponential(0)
    : String(Number(v.toPrecision(6)));

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** One plotting panel; emits SVG fragments positioned at (x0, 0). */
export class Panel {
  readonly parts: string[] = [];
  readonly plotLeft: number;
  readonly plotRight: number;
  readonly plotTop: number;
  readonly plotBottom: number;

  constructor(readonly geom: PanelGeometry, readonly x0 = 0) {
    this.plotLeft = x0 + geom.margin.left;
    this.plotRight = x0 + geom.width - geom.margin.right;
    this.plotTop = geom.margin.top;
    this.plotBottom = geom.height - geom.margin.bottom;
  }

  xScale(domain: [number, number]): Scale {
    return linearScale(domain, [this.plotLeft, this.plotRight]);
  }

  yScale(domain: [number, number], log = false): Scale {
    const range: [number, number] = [this.plotBottom, this.plotTop];
    return log ? logScale(domain, range) : linearScale(domain, range);
  }

  title(text: string): void {
    const cx = this.x0 + this.geom.width / 2;
    this.parts.push(
      `<text x="${cx}" y="18" text-anchor="middle" font-size="14" font-weight="bold">${esc(text)}</text>`,
    );
  }

  axes(x: Scale, y: Scale, xLabel: string, yLabel: string, yTicks?: number[]): void {
    const p = this.parts;
    p.push(
      `<line x1="${this.plotLeft}" y1="${this.plotBottom}" x2="${this.plotRight}" y2="${this.plotBottom}" stroke="black"/>`,
      `<line x1="${this.plotLeft}" y1="${this.plotTop}" x2="${this.plotLeft}" y2="${this.plotBottom}" stroke="black"/>`,
    );
    for (const t of ticks(x.domain[0], x.domain[1])) {
      const px = x(t);
      p.push(
        `<line x1="${px}" y1="${this.plotBottom}" x2="${px}" y2="${this.plotBottom + 4}" stroke="black"/>`,
        `<text x="${px}" y="${this.plotBottom + 18}" text-anchor="middle" font-size="11">${fmt(t)}</text>`,
      );
    }
    for (const t of yTicks ?? ticks(y.domain[0], y.domain[1], 5)) {
      const py = y(t);
      p.push(
        `<line x1="${this.plotLeft - 4}" y1="${py}" x2="${this.plotLeft}" y2="${py}" stroke="black"/>`,
        `<text x="${this.plotLeft - 7}" y="${py + 4}" text-anchor="end" font-size="11">${fmt(t)}</text>`,
      );
    }
    const cx = (this.plotLeft + this.plotRight) / 2;
    p.push(
      `<text x="${cx}" y="${this.geom.height - 10}" text-anchor="middle" font-size="12">${esc(xLabel)}</text>`,
      `<text transform="translate(${this.x0 + 14},${(this.plotTop + this.plotBottom) / 2}) rotate(-90)" text-anchor="middle" font-size="12">${esc(yLabel)}</text>`,
    );
  }

  bars(
    data: Array<{ left: number; right: number; value: number }>,
    x: Scale,
    y: Scale,
    fill: string,
    floor: number = y.domain[0],
  ): void {
    for (const d of data) {
      if (d.value <= floor) continue;
      const px = x(d.left);
      const w = Math.max(0.5, x(d.right) - px);
      const py = y(d.value);
      this.parts.push(
        `<rect x="${px.toFixed(2)}" y="${py.toFixed(2)}" width="${w.toFixed(2)}" height="${(this.plotBottom - py).toFixed(2)}" fill="${fill}" stroke="none"/>`,
      );
    }
  }

  polyline(points: Array<[number, number]>, x: Scale, y: Scale, stroke: string, overlay = false): void {
    const pts = points.map(([px, py]) => `${x(px).toFixed(2)},${y(py).toFixed(2)}`).join(" ");
    const cls = overlay ? ' class="overlay"' : "";
    this.parts.push(
      `<polyline${cls} points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.8"/>`,
    );
  }

  markers(points: Array<[number, number]>, x: Scale, y: Scale, fill: string, overlay = false): void {
    const cls = overlay ? ' class="overlay"' : "";
    for (const [px, py] of points) {
      this.parts.push(
        `<circle${cls} cx="${x(px).toFixed(2)}" cy="${y(py).toFixed(2)}" r="3.2" fill="${fill}"/>`,
      );
    }
  }

  errorBars(points: Array<[number, number, number]>, x: Scale, y: Scale, stroke: string): void {
    for (const [px, py, half] of points) {
      const cx = x(px);
      this.parts.push(
        `<line x1="${cx}" y1="${y(py - half)}" x2="${cx}" y2="${y(py + half)}" stroke="${stroke}" stroke-width="1"/>`,
      );
    }
  }

  legend(entries: Array<{ label: string; color: string }>): void {
    let yPos = this.plotTop + 14;
    for (const e of entries) {
      this.parts.push(
        `<rect x="${this.plotRight - 150}" y="${yPos - 9}" width="10" height="10" fill="${e.color}"/>`,
        `<text x="${this.plotRight - 136}" y="${yPos}" font-size="11">${esc(e.label)}</text>`,
      );
      yPos += 16;
    }
  }
}

export function svgDocument(panels: Panel[], width: number, height: number): string {
  const body = panels.map((p) => p.parts.join("\n")).join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    body,
    "</svg>",
  ].join("\n");
}
