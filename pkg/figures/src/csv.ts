/**
 * Sweep CSV contract.
 *
 * The simulator CLI emits one row per (water, scenario, beta, length)
 * operating point with this exact header; anything else is rejected so a
 * drifting producer fails loudly instead of plotting garbage.
 */

export const EXPECTED_HEADER = [
    'water',
    'scenario',
    'beta_rad',
    'L_m',
    'qber',
    'skr_bits_per_pulse',
    'p_coincidence',
    'mc_qber',
    'mc_stderr',
] as const;

export interface SweepRow {
    water: string;
    scenario: number;
    betaRad: number;
    lengthM: number;
    qber: number;
    skr: number;
    pCoincidence: number;
    mcQber: number | null;
    mcStderr: number | null;
}

export class SchemaError extends Error {}
export class DataError extends Error {}

function requireNumber(field: string, raw: string, line: number): number {
    const value = Number(raw);
    if (raw.trim() === '' || !Number.isFinite(value)) {
        throw new SchemaError(`line ${line}: field ${field} is not a number: '${raw}'`);
    }
    return value;
}

function optionalNumber(field: string, raw: string, line: number): number | null {
    if (raw.trim() === '') {
        return null;
    }
    return requireNumber(field, raw, line);
}

/** Parse sweep CSV text, validating the header and every row. */
export function parseSweepCsv(text: string): SweepRow[] {
    const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
    if (lines.length === 0) {
        throw new SchemaError('empty file: missing header row');
    }
    const header = lines[0].split(',');
    const expected = EXPECTED_HEADER.join(',');
    if (header.join(',') !== expected) {
        throw new SchemaError(
            `header mismatch: expected '${expected}', got '${lines[0]}'`,
        );
    }
    const rows: SweepRow[] = [];
    for (let i = 1; i < lines.length; i++) {
        const parts = lines[i].split(',');
        if (parts.length !== EXPECTED_HEADER.length) {
            throw new SchemaError(
                `line ${i + 1}: expected ${EXPECTED_HEADER.length} fields, got ${parts.length}`,
            );
        }
        rows.push({
            water: parts[0],
            scenario: requireNumber('scenario', parts[1], i + 1),
            betaRad: requireNumber('beta_rad', parts[2], i + 1),
            lengthM: requireNumber('L_m', parts[3], i + 1),
            qber: requireNumber('qber', parts[4], i + 1),
            skr: requireNumber('skr_bits_per_pulse', parts[5], i + 1),
            pCoincidence: requireNumber('p_coincidence', parts[6], i + 1),
            mcQber: optionalNumber('mc_qber', parts[7], i + 1),
            mcStderr: optionalNumber('mc_stderr', parts[8], i + 1),
        });
    }
    return rows;
}
