/**
 * Figure models: pure data assembled from sweep rows, independent of any
 * rendering backend. No physics is recomputed here; the CSV is the single
 * source of truth.
 */

import { DataError, SweepRow } from './csv.js';

export const QBER_SECURITY_LIMIT = 0.11;

export type FigureKind = 'qber' | 'skr';

export interface Series {
    name: string;
    points: Array<[number, number]>;
}

export interface Panel {
    title: string;
    series: Series[];
    /** Horizontal reference line value, if the panel carries one. */
    refLine?: number;
}

export interface FigureModel {
    kind: FigureKind;
    xLabel: string;
    yLabel: string;
    panels: Panel[];
}

const BETA_EPS = 1e-9;

function distinct<T>(values: T[]): T[] {
    return [...new Set(values)];
}

function betasIn(rows: SweepRow[]): number[] {
    return distinct(rows.map((r) => r.betaRad)).sort((a, b) => a - b);
}

function selectBeta(rows: SweepRow[], betaFilter: number | undefined, fallback: 'max'): number {
    const betas = betasIn(rows);
    if (betaFilter === undefined) {
        return betas[betas.length - 1]; // most-entangled curve by default
    }
    const match = betas.find((b) => Math.abs(b - betaFilter) <= BETA_EPS);
    if (match === undefined) {
        throw new DataError(
            `no rows with beta ${betaFilter}; available: ${betas.join(', ')}`,
        );
    }
    return match;
}

function curve(rows: SweepRow[], pick: (r: SweepRow) => number): Array<[number, number]> {
    return rows
        .slice()
        .sort((a, b) => a.lengthM - b.lengthM)
        .map((r) => [r.lengthM, pick(r)]);
}

/** One panel per water type, one curve per scenario, QBER on the y axis. */
export function buildQberFigure(rows: SweepRow[], betaFilter?: number): FigureModel {
    if (rows.length === 0) {
        throw new DataError('no data rows in the CSV');
    }
    const beta = selectBeta(rows, betaFilter, 'max');
    const selected = rows.filter((r) => Math.abs(r.betaRad - beta) <= BETA_EPS);
    const waters = distinct(selected.map((r) => r.water));
    const panels: Panel[] = waters.map((water) => {
        const inWater = selected.filter((r) => r.water === water);
        const scenarios = distinct(inWater.map((r) => r.scenario)).sort((a, b) => a - b);
        return {
            title: `${water} water`,
            refLine: QBER_SECURITY_LIMIT,
            series: scenarios.map((s) => ({
                name: `s${s}`,
                points: curve(inWater.filter((r) => r.scenario === s), (r) => r.qber),
            })),
        };
    });
    return {
        kind: 'qber',
        xLabel: 'distance (m)',
        yLabel: `QBER, beta = ${beta.toFixed(4)} rad`,
        panels,
    };
}

/** One panel per source angle, one curve per (water, scenario), SKR on the y axis. */
export function buildSkrFigure(rows: SweepRow[], betaFilter?: number): FigureModel {
    if (rows.length === 0) {
        throw new DataError('no data rows in the CSV');
    }
    let betas = betasIn(rows);
    if (betaFilter !== undefined) {
        betas = [selectBeta(rows, betaFilter, 'max')];
    }
    const panels: Panel[] = betas.map((beta) => {
        const selected = rows.filter((r) => Math.abs(r.betaRad - beta) <= BETA_EPS);
        const waters = distinct(selected.map((r) => r.water));
        const series: Series[] = [];
        for (const water of waters) {
            const inWater = selected.filter((r) => r.water === water);
            const scenarios = distinct(inWater.map((r) => r.scenario)).sort((a, b) => a - b);
            for (const s of scenarios) {
                series.push({
                    name: `${water} s${s}`,
                    points: curve(inWater.filter((r) => r.scenario === s), (r) => r.skr),
                });
            }
        }
        return { title: `beta = ${beta.toFixed(4)} rad`, series };
    });
    return { kind: 'skr', xLabel: 'distance (m)', yLabel: 'SKR (bits per pulse)', panels };
}

export function buildFigure(
    rows: SweepRow[],
    kind: FigureKind,
    betaFilter?: number,
): FigureModel {
    return kind === 'qber' ? buildQberFigure(rows, betaFilter) : buildSkrFigure(rows, betaFilter);
}

/** Largest y value of each panel, for checks against the raw CSV. */
export function panelMaxima(model: FigureModel): number[] {
    return model.panels.map((panel) =>
        Math.max(...panel.series.flatMap((s) => s.points.map(([, y]) => y))),
    );
}
