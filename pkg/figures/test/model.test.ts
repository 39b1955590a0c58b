import * as fs from 'node:fs';
import * as path from 'node:path';

import { describe, expect, it } from 'vitest';

import { DataError, parseSweepCsv } from '../src/csv.js';
import {
    QBER_SECURITY_LIMIT,
    buildQberFigure,
    buildSkrFigure,
    panelMaxima,
} from '../src/model.js';

const FIXTURE = path.join(__dirname, 'fixtures', 'sweep_default_grid.csv');
const rows = parseSweepCsv(fs.readFileSync(FIXTURE, 'utf-8'));

const PI_4 = Math.PI / 4;
const PI_5 = Math.PI / 5;

describe('buildQberFigure', () => {
    it('builds three panels with five scenario curves each', () => {
        const model = buildQberFigure(rows);
        expect(model.panels.length).toBe(3);
        for (const panel of model.panels) {
            expect(panel.series.length).toBe(5);
            expect(panel.series.map((s) => s.name)).toEqual(['s1', 's2', 's3', 's4', 's5']);
        }
    });

    it('puts the 11% reference line on every panel', () => {
        const model = buildQberFigure(rows);
        for (const panel of model.panels) {
            expect(panel.refLine).toBe(QBER_SECURITY_LIMIT);
        }
    });

    it('defaults to the most entangled source angle present', () => {
        const model = buildQberFigure(rows);
        expect(model.yLabel).toContain(PI_4.toFixed(4));
    });

    it('honors an explicit beta filter', () => {
        const model = buildQberFigure(rows, PI_5);
        expect(model.yLabel).toContain(PI_5.toFixed(4));
        // the partially entangled curves start at a higher error rate
        const firstPoint = model.panels[0].series[0].points[0];
        expect(firstPoint[1]).toBeGreaterThan(0.07);
    });

    it('rejects a beta with no rows', () => {
        expect(() => buildQberFigure(rows, 0.123)).toThrow(DataError);
    });

    it('rejects an empty selection', () => {
        expect(() => buildQberFigure([])).toThrow(DataError);
    });

    it('sorts curve points by distance', () => {
        const model = buildQberFigure(rows);
        for (const panel of model.panels) {
            for (const series of panel.series) {
                const xs = series.points.map(([x]) => x);
                expect(xs).toEqual([...xs].sort((a, b) => a - b));
            }
        }
    });
});

describe('buildSkrFigure', () => {
    it('builds one panel per source angle with all water-scenario curves', () => {
        const model = buildSkrFigure(rows);
        expect(model.panels.length).toBe(2);
        for (const panel of model.panels) {
            expect(panel.series.length).toBe(15);
            expect(panel.refLine).toBeUndefined();
        }
    });

    it('panel maxima equal the CSV maxima', () => {
        const model = buildSkrFigure(rows);
        const betas = [PI_5, PI_4]; // panels are sorted ascending
        const maxima = panelMaxima(model);
        betas.forEach((beta, i) => {
            const expected = Math.max(
                ...rows
                    .filter((r) => Math.abs(r.betaRad - beta) < 1e-9)
                    .map((r) => r.skr),
            );
            expect(maxima[i]).toBe(expected);
        });
    });

    it('single panel when filtered by beta', () => {
        const model = buildSkrFigure(rows, PI_4);
        expect(model.panels.length).toBe(1);
        expect(model.panels[0].series.length).toBe(15);
    });
});
