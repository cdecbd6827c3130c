// Thin client over the gateway API. Every request goes through one of the
// functions below, so the documented endpoint set is the only surface used.

import type {
  ArgumentReport, ArgumentSummary, DeformalizationReport, ExerciseDetail,
  ExerciseSummary, FormalizationReport,
} from './types.js'

export class ApiError extends Error {
  constructor(public status: number, public kind: string, message: string,
              public body: unknown = null) {
    super(message)
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { 'Content-Type': 'application/json' },
    ...init,
  })
  const body = await response.json().catch(() => null)
  if (!response.ok) {
    const error = (body as { error?: { kind?: string; detail?: string } })?.error
    throw new ApiError(response.status, error?.kind ?? 'unknown',
      error?.detail ?? `HTTP ${response.status}`, body)
  }
  return body as T
}

export function listExercises(): Promise<ExerciseSummary[]> {
  return request('/api/exercises')
}

export function getExercise(id: string, mode: 'formalize' | 'deformalize'):
    Promise<ExerciseDetail> {
  return request(`/api/exercises/${encodeURIComponent(id)}?mode=${mode}`)
}

export function submitDeformalization(id: string, text: string):
    Promise<DeformalizationReport> {
  return request(`/api/exercises/${encodeURIComponent(id)}/deformalization`,
    { method: 'POST', body: JSON.stringify({ text }) })
}

export function submitFormalization(id: string, formula: string):
    Promise<FormalizationReport> {
  return request(`/api/exercises/${encodeURIComponent(id)}/formalization`,
    { method: 'POST', body: JSON.stringify({ formula }) })
}

export function listArguments(): Promise<ArgumentSummary[]> {
  return request('/api/arguments')
}

export function submitArgument(id: string, steps: string[]):
    Promise<ArgumentReport> {
  return request(`/api/arguments/${encodeURIComponent(id)}`,
    { method: 'POST', body: JSON.stringify({ steps }) })
}
