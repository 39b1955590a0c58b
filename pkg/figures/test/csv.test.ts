import * as fs from 'node:fs';
import * as path from 'node:path';

import { describe, expect, it } from 'vitest';

import { EXPECTED_HEADER, SchemaError, parseSweepCsv } from '../src/csv.js';

const FIXTURE = path.join(__dirname, 'fixtures', 'sweep_default_grid.csv');

describe('parseSweepCsv', () => {
    it('parses the real sweep fixture', () => {
        const rows = parseSweepCsv(fs.readFileSync(FIXTURE, 'utf-8'));
        expect(rows.length).toBe(510); // 3 waters x 5 scenarios x 2 betas x 17 lengths
        expect(new Set(rows.map((r) => r.water))).toEqual(
            new Set(['clear', 'coastal', 'turbid']),
        );
        expect(new Set(rows.map((r) => r.scenario))).toEqual(new Set([1, 2, 3, 4, 5]));
        for (const row of rows) {
            expect(row.qber).toBeGreaterThanOrEqual(0);
            expect(row.qber).toBeLessThanOrEqual(1);
            expect(row.skr).toBeGreaterThanOrEqual(0);
            expect(row.mcQber).toBeNull(); // sweep ran without Monte Carlo
        }
    });

    it('rejects a header mismatch', () => {
        const bad = 'water,scenario,beta,L_m,qber,skr,p,mc,err\nclear,1,0.7,0,0.03,0.07,0.25,,';
        expect(() => parseSweepCsv(bad)).toThrow(SchemaError);
    });

    it('rejects a renamed column', () => {
        const header = [...EXPECTED_HEADER];
        header[4] = 'QBER';
        const bad = `${header.join(',')}\nclear,1,0.7,0,0.03,0.07,0.25,,`;
        expect(() => parseSweepCsv(bad)).toThrow(/header mismatch/);
    });

    it('rejects an empty file', () => {
        expect(() => parseSweepCsv('')).toThrow(SchemaError);
    });

    it('rejects rows with missing fields', () => {
        const bad = `${EXPECTED_HEADER.join(',')}\nclear,1,0.7,0`;
        expect(() => parseSweepCsv(bad)).toThrow(/expected 9 fields/);
    });

    it('rejects non-numeric required fields', () => {
        const bad = `${EXPECTED_HEADER.join(',')}\nclear,1,0.7,zero,0.03,0.07,0.25,,`;
        expect(() => parseSweepCsv(bad)).toThrow(/L_m/);
    });

    it('keeps Monte Carlo columns when present', () => {
        const good = `${EXPECTED_HEADER.join(',')}\nclear,1,0.7,0,0.03,0.07,0.25,0.031,0.002`;
        const [row] = parseSweepCsv(good);
        expect(row.mcQber).toBeCloseTo(0.031);
        expect(row.mcStderr).toBeCloseTo(0.002);
    });
});
