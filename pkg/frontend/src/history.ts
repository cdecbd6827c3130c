// Per-exercise attempt history, kept in memory only: refreshing the page
// starts over, which keeps the service stateless.

import type { AttemptEntry } from './types.js'

export class AttemptHistory {
  private entries = new Map<string, AttemptEntry[]>()

  record(exerciseId: string, entry: AttemptEntry): void {
    const list = this.entries.get(exerciseId) ?? []
    list.push(entry) // append-only
    this.entries.set(exerciseId, list)
  }

  for(exerciseId: string): readonly AttemptEntry[] {
    return this.entries.get(exerciseId) ?? []
  }
}
